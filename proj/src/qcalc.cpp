#include "gevrey/qcalc.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gevrey {

QLaurentSeries::QLaurentSeries(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("QLaurentSeries: empty coefficient list");
}

QLaurentSeries QLaurentSeries::zero(std::size_t order) {
    return QLaurentSeries(std::vector<Rat>(order + 1, Rat(0)));
}

const Rat& QLaurentSeries::coeff(std::size_t n) const {
    if (n >= coeffs_.size()) throw std::out_of_range("QLaurentSeries: beyond truncation");
    return coeffs_[n];
}

QLaurentSeries QLaurentSeries::operator+(const QLaurentSeries& o) const {
    std::size_t n = std::min(order(), o.order());
    std::vector<Rat> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = coeffs_[i] + o.coeffs_[i];
    return QLaurentSeries(std::move(v));
}

QLaurentSeries QLaurentSeries::operator-(const QLaurentSeries& o) const {
    std::size_t n = std::min(order(), o.order());
    std::vector<Rat> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = coeffs_[i] - o.coeffs_[i];
    return QLaurentSeries(std::move(v));
}

QLaurentSeries QLaurentSeries::operator*(const Rat& c) const {
    std::vector<Rat> v = coeffs_;
    for (auto& x : v) x *= c;
    return QLaurentSeries(std::move(v));
}

QLaurentSeries QLaurentSeries::shift_down() const {
    std::vector<Rat> v(coeffs_.size() + 1, Rat(0));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) v[n + 1] = coeffs_[n];
    return QLaurentSeries(std::move(v));
}

bool QLaurentSeries::agrees_with(const QLaurentSeries& o, std::size_t through) const {
    if (order() < through || o.order() < through) return false;
    for (std::size_t n = 0; n <= through; ++n)
        if (coeffs_[n] != o.coeffs_[n]) return false;
    return true;
}

std::string QLaurentSeries::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (coeffs_[n] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs_[n].get_str() << ")*" << var << "^-" << (n + 1);
    }
    if (first) os << "0";
    os << " + O(" << var << "^-" << (coeffs_.size() + 1) << ")";
    return os.str();
}

FormalSeries sigma_apply(const FormalSeries& f, const Rat& ratio) {
    if (ratio == 1) throw std::invalid_argument("sigma_apply: ratio must differ from 1");
    std::vector<Rat> v = f.coeffs();
    Rat pw(1);
    for (std::size_t n = 0; n < v.size(); ++n) {
        v[n] *= pw;
        pw *= ratio;
    }
    return FormalSeries(std::move(v));
}

FormalSeries delta_apply(const FormalSeries& f, const Rat& ratio) {
    if (ratio == 1) throw std::invalid_argument("delta_apply: ratio must differ from 1");
    // z^n -> n_ratio z^{n-1}
    std::size_t N = f.order();
    std::vector<Rat> v(N == 0 ? 1 : N, Rat(0));
    Rat pw = ratio;
    for (std::size_t n = 1; n <= N; ++n) {
        v[n - 1] = f.coeff(n) * (pw - 1) / (ratio - 1);
        pw *= ratio;
    }
    return FormalSeries(std::move(v));
}

QLaurentSeries sigma_apply(const QLaurentSeries& f, const Rat& ratio) {
    if (ratio == 1) throw std::invalid_argument("sigma_apply: ratio must differ from 1");
    std::vector<Rat> v = f.coeffs();
    Rat pw = 1 / ratio;  // z^{-n-1} -> ratio^{-n-1} z^{-n-1}
    for (std::size_t n = 0; n < v.size(); ++n) {
        v[n] *= pw;
        pw /= ratio;
    }
    return QLaurentSeries(std::move(v));
}

QLaurentSeries delta_apply(const QLaurentSeries& f, const Rat& ratio) {
    if (ratio == 1) throw std::invalid_argument("delta_apply: ratio must differ from 1");
    // z^{-n-1} -> (ratio^{-n-1} - 1)/((ratio-1) z) z^{-n-1}: index shifts up by one
    std::vector<Rat> v(f.coeffs().size() + 1, Rat(0));
    Rat pw = 1 / ratio;
    for (std::size_t n = 0; n < f.coeffs().size(); ++n) {
        v[n + 1] = f.coeff(n) * (pw - 1) / (ratio - 1);
        pw /= ratio;
    }
    return QLaurentSeries(std::move(v));
}

RationalFunction sigma_apply(const RationalFunction& f, const Rat& ratio) {
    return f.scaled_arg(ratio);
}

RationalFunction delta_apply(const RationalFunction& f, const Rat& ratio) {
    if (ratio == 1) throw std::invalid_argument("delta_apply: ratio must differ from 1");
    Poly denom = Poly::monomial(1, ratio - 1);  // (ratio - 1) z
    return (f.scaled_arg(ratio) - f) / RationalFunction(denom);
}

namespace {

// Coefficients of prod_{m >= M+1} (1 + (q-1) z / q^m) through z^trunc via the
// Euler development of prod (1 + t q^{-m}) at t = (q-1) q^{-M} z.
std::vector<Rat> euler_tail(const Rat& q, std::size_t M, std::size_t trunc) {
    std::vector<Rat> t(trunc + 1, Rat(0));
    t[0] = 1;
    Rat qinv = 1 / q;
    Rat scale = (q - 1) * rat_pow(qinv, static_cast<long>(M));
    Rat qs(1);        // q^{-j}
    Rat num(1);       // scale^j q^{-j(j+1)/2}
    Rat den(1);       // prod_{i<=j} (1 - q^{-i})
    for (std::size_t j = 1; j <= trunc; ++j) {
        qs *= qinv;
        num *= scale * qs;
        den *= (1 - qs);
        t[j] = num / den;
    }
    return t;
}

FormalSeries eq_product_big_q(const QContext& ctx, std::size_t trunc) {
    const Rat& q = ctx.q();
    std::size_t M = trunc;  // literal factors; the rest closes as a geometric-type tail
    FormalSeries acc(std::vector<Rat>(trunc + 1, Rat(0)));
    {
        std::vector<Rat> one(trunc + 1, Rat(0));
        one[0] = 1;
        acc = FormalSeries(std::move(one));
    }
    Rat qpow(1);
    for (std::size_t m = 1; m <= M; ++m) {
        qpow *= q;
        std::vector<Rat> factor(trunc + 1, Rat(0));
        factor[0] = 1;
        if (trunc >= 1) factor[1] = (q - 1) / qpow;
        acc = acc * FormalSeries(std::move(factor));
    }
    return acc * FormalSeries(euler_tail(q, M, trunc));
}

}  // namespace

FormalSeries q_special_series(QSeriesKind kind, const QContext& ctx, std::size_t trunc) {
    const Rat& q = ctx.q();
    switch (kind) {
        case QSeriesKind::Tschakaloff: {
            // exponent n(n-1)/2 is integral, no root of q is ever needed
            std::vector<Rat> v(trunc + 1);
            for (std::size_t n = 0; n <= trunc; ++n)
                v[n] = rat_pow(q, -(static_cast<long>(n) * (static_cast<long>(n) - 1)) / 2);
            return FormalSeries(std::move(v));
        }
        case QSeriesKind::QExponential: {
            std::vector<Rat> v(trunc + 1);
            for (std::size_t n = 0; n <= trunc; ++n) v[n] = 1 / ctx.q_factorial(n);
            return FormalSeries(std::move(v));
        }
        case QSeriesKind::QExponentialProduct: {
            if (rat_abs(q) > 1) return eq_product_big_q(ctx, trunc);
            // |q| < 1: the product diverges as written; use the reflection
            // E_q(z) = 1/E_{1/q}(-z) and build the right side from its product.
            QContext inv_ctx(1 / q);
            FormalSeries big = eq_product_big_q(inv_ctx, trunc);
            std::vector<Rat> v = big.coeffs();
            for (std::size_t n = 1; n < v.size(); n += 2) v[n] = -v[n];
            return FormalSeries(std::move(v)).inverse();
        }
    }
    throw std::logic_error("q_special_series: unreachable");
}

QLaurentSeries q_laplace(const FormalSeries& f, QLaplaceMode mode, const QContext& ctx) {
    std::vector<Rat> v(f.order() + 1);
    for (std::size_t n = 0; n <= f.order(); ++n) {
        if (mode == QLaplaceMode::Sharp) {
            long e = (static_cast<long>(n) * (static_cast<long>(n) - 1)) / 2;
            v[n] = f.coeff(n) * rat_pow(ctx.q(), e);
        } else {
            v[n] = f.coeff(n) * ctx.q_factorial(n);
        }
    }
    return QLaurentSeries(std::move(v));
}

namespace {

void check_poles(const std::vector<Rat>& beta, const std::vector<Rat>& alpha) {
    if (beta.size() != alpha.size() + 1)
        throw std::invalid_argument("q_divide: beta must have one more entry than alpha");
    std::set<Rat> seen;
    for (const Rat& a : alpha) {
        if (a == 0) throw std::invalid_argument("q_divide: alpha entries must be nonzero");
        if (!seen.insert(a).second)
            throw std::invalid_argument("q_divide: alpha entries must be pairwise distinct");
    }
}

}  // namespace

PartialFraction q_combination_transform_fractions(const std::vector<Rat>& beta,
                                                  const std::vector<Rat>& alpha) {
    check_poles(beta, alpha);
    std::vector<PartialFractionTerm> terms;
    if (beta[0] != 0) terms.push_back({Rat(0), beta[0], 1});
    for (std::size_t j = 0; j < alpha.size(); ++j)
        if (beta[j + 1] != 0) terms.push_back({alpha[j], beta[j + 1], 1});
    return PartialFraction(Poly(), std::move(terms));
}

QLaurentSeries q_divide_transform(const std::vector<Rat>& beta, const std::vector<Rat>& alpha,
                                  const Rat& xi, const QContext& ctx, QLaplaceMode mode,
                                  std::size_t trunc) {
    check_poles(beta, alpha);
    if (xi == 0) throw std::invalid_argument("q_divide_transform: xi must be nonzero");
    // A_k = sum_j beta_j alpha_j^k with the alpha_0 convention (k = 0 only)
    std::vector<Rat> A(trunc + 1, Rat(0));
    A[0] = beta[0];
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        Rat pw(1);
        for (std::size_t k = 0; k <= trunc; ++k) {
            A[k] += beta[j + 1] * pw;
            pw *= alpha[j];
        }
    }
    // Solve the relation in the tail space: matching z^{-1} gives
    // -xi c_0 = A_0, and z^{-n-2} gives w_n c_n - xi c_{n+1} = A_{n+1}
    // with w_n = q^n (sharp) or (n+1)_q (plus).
    std::vector<Rat> c(trunc + 1);
    c[0] = -A[0] / xi;
    Rat qpow(1);
    for (std::size_t n = 0; n + 1 <= trunc; ++n) {
        Rat w = (mode == QLaplaceMode::Sharp) ? qpow : ctx.q_integer(n + 1);
        c[n + 1] = (w * c[n] - A[n + 1]) / xi;
        qpow *= ctx.q();
    }
    return QLaurentSeries(std::move(c));
}

QDiffOp::QDiffOp(Rat ratio) : ratio_(std::move(ratio)) {
    if (ratio_ == 0 || ratio_ == 1)
        throw std::invalid_argument("QDiffOp: ratio must be nonzero and different from 1");
}

QDiffOp QDiffOp::shift(Rat ratio, long power) {
    QDiffOp a(std::move(ratio));
    if (power < 0) throw std::invalid_argument("QDiffOp: negative shift power");
    a.set(power, RationalFunction(Rat(1)));
    return a;
}

void QDiffOp::set(long i, RationalFunction c) {
    if (c.is_zero())
        coeffs_.erase(i);
    else
        coeffs_[i] = std::move(c);
}

long QDiffOp::order() const {
    long r = 0;
    for (const auto& [i, c] : coeffs_) r = std::max(r, i);
    return r;
}

QDiffOp QDiffOp::operator+(const QDiffOp& o) const {
    if (!(ratio_ == o.ratio_)) throw std::invalid_argument("QDiffOp: mixed dilation ratios");
    QDiffOp r = *this;
    for (const auto& [i, c] : o.coeffs_) {
        auto it = r.coeffs_.find(i);
        RationalFunction v = (it == r.coeffs_.end() ? RationalFunction() : it->second) + c;
        r.set(i, v);
    }
    return r;
}

QDiffOp QDiffOp::operator-(const QDiffOp& o) const { return *this + o.scaled(RationalFunction(Rat(-1))); }

QDiffOp QDiffOp::scaled(const RationalFunction& c) const {
    QDiffOp r(ratio_);
    for (const auto& [i, v] : coeffs_) r.set(i, c * v);
    return r;
}

QDiffOp QDiffOp::compose(const QDiffOp& o) const {
    if (!(ratio_ == o.ratio_)) throw std::invalid_argument("QDiffOp: mixed dilation ratios");
    QDiffOp r(ratio_);
    for (const auto& [i, c] : coeffs_) {
        Rat ri = rat_pow(ratio_, i);
        for (const auto& [j, d] : o.coeffs_) {
            RationalFunction term = c * d.scaled_arg(ri);
            auto it = r.coeffs_.find(i + j);
            RationalFunction v = (it == r.coeffs_.end() ? RationalFunction() : it->second) + term;
            r.set(i + j, v);
        }
    }
    return r;
}

std::string QDiffOp::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.to_string() << ")";
        if (it->first > 0) {
            os << "*S{" << ratio_.get_str() << "}";
            if (it->first > 1) os << "^" << it->first;
        }
    }
    return os.str();
}

NewtonPolygon qdiff_newton_polygon(const QDiffOp& a) {
    if (a.is_zero()) throw std::invalid_argument("qdiff_newton_polygon: zero operator");
    std::vector<std::pair<long, Rat>> pts;
    bool has_pole = false;
    for (const auto& [i, c] : a.coefficients()) {
        pts.emplace_back(i, Rat(c.degree()));
        if (!c.is_polynomial()) has_pole = true;
    }
    std::sort(pts.begin(), pts.end());
    // upper hull, monotone chain
    std::vector<std::pair<long, Rat>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& u = hull[hull.size() - 2];
            const auto& v = hull.back();
            // drop v if it lies below or on segment u -> p
            Rat lhs = (v.second - u.second) * Rat(p.first - u.first);
            Rat rhs = (p.second - u.second) * Rat(v.first - u.first);
            if (lhs <= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    bool flip = rat_abs(a.ratio()) < 1;  // report in the |dilation| > 1 orientation
    std::vector<std::pair<Rat, long>> edges;
    for (std::size_t k = 1; k < hull.size(); ++k) {
        long run = hull[k].first - hull[k - 1].first;
        Rat slope = (hull[k].second - hull[k - 1].second) / Rat(run);
        if (flip) slope = -slope;
        edges.emplace_back(slope, run);
    }
    if (has_pole) edges.emplace_back(Rat(0), 1);
    std::sort(edges.begin(), edges.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    NewtonPolygon np;
    np.location = PolygonLocation::Infinity;
    for (auto& [s, len] : edges) {
        if (!np.slopes.empty() && np.slopes.back().first == s)
            np.slopes.back().second += len;
        else
            np.slopes.emplace_back(s, len);
    }
    if (np.slopes.empty()) np.slopes.emplace_back(Rat(0), std::max<long>(1, a.order()));
    return np;
}

RationalFunction iterated_delta_partial_fraction(const Rat& alpha, std::size_t n,
                                                 const QContext& ctx) {
    if (alpha == 0) throw std::invalid_argument("iterated_delta_partial_fraction: alpha is zero");
    Poly den(Rat(1));
    Rat pole = alpha;
    for (std::size_t i = 0; i <= n; ++i) {
        den = den * Poly(std::vector<Rat>{-pole, Rat(1)});
        pole *= ctx.q();
    }
    Rat num = ctx.q_factorial(n);
    if (n % 2 == 1) num = -num;
    return RationalFunction(Poly(num), den);
}

Lemma454Result lemma454_solve(const Rat& alpha, const Rat& xi, const QContext& ctx, long M,
                              long N) {
    if (alpha == 0 || xi == 0)
        throw std::invalid_argument("lemma454_solve: alpha and xi must be nonzero");
    if (M < 0 || N < 0) throw std::invalid_argument("lemma454_solve: window must be nonnegative");
    const Rat& q = ctx.q();
    Lemma454Result res;

    // The chain gamma_{n-1} = [1 - alpha xi q^n (1-q)] gamma_n from
    // gamma_{N+1} = 0 forces gamma_n = 0 for n >= 0; the n = 0 relation then
    // pins gamma_{-1} = alpha(q-1), and the downward chain can only return
    // to zero at -M-1 if a bracket vanishes, i.e. alpha xi (1-q) = q^m.
    Rat target = alpha * xi * (1 - q);
    long found = 0;
    Rat qpow(1);
    for (long m = 1; m <= M + 64; ++m) {
        qpow *= q;
        if (qpow == target) {
            found = m;
            break;
        }
    }
    res.exponent = found;
    if (found == 0 || found > M) {
        res.solvable = false;
        res.window_limited = (found != 0);
        // obstruction: the forced value of gamma_{-M-1}, nonzero in-window
        Rat g = alpha * (q - 1);
        for (long n = -1; n >= -M; --n) g *= (1 - alpha * xi * rat_pow(q, n) * (1 - q));
        res.obstruction = g;
        res.detail = res.window_limited
                         ? "condition alpha*xi*(1-q) = q^m holds only beyond the window"
                         : "no exponent m with alpha*xi*(1-q) = q^m";
        return res;
    }

    res.solvable = true;
    std::map<long, Rat> gamma;
    Rat g = alpha * (q - 1);
    gamma[-1] = g;
    for (long n = -1; n > -found; --n) {
        g *= (1 - alpha * xi * rat_pow(q, n) * (1 - q));
        gamma[n - 1] = g;
    }
    // entries outside [-found, -1] are zero and omitted
    res.gamma = gamma;

    // re-substitute exactly
    RationalFunction sum;
    for (const auto& [n, gn] : gamma) {
        Poly den(std::vector<Rat>{-alpha * rat_pow(q, n), Rat(1)});
        sum = sum + RationalFunction(Poly(gn), den);
    }
    RationalFunction lhs =
        delta_apply(sum, 1 / q) * RationalFunction(Rat(-1) / q) - sum * RationalFunction(xi);
    RationalFunction rhs(Poly(Rat(1)), Poly(std::vector<Rat>{-alpha, Rat(1)}));
    res.verified = (lhs == rhs);
    res.detail = "solution supported on [-m, -1], m = " + std::to_string(found);
    return res;
}

ThetaCheck theta_bilateral_check(const Rat& c, const Rat& xi, std::size_t N) {
    if (rat_abs(c) >= 1 || c == 0)
        throw std::invalid_argument("theta_bilateral_check: need 0 < |c| < 1");
    if (xi == 0) throw std::invalid_argument("theta_bilateral_check: xi must be nonzero");
    ThetaCheck out;
    auto term = [&](long n) {
        long e = n * (n + 1) / 2;
        return rat_pow(c, e) * rat_pow(xi, n);
    };
    Rat bilateral(0);
    for (long n = -static_cast<long>(N); n <= static_cast<long>(N); ++n) bilateral += term(n);
    Rat side(0);
    for (long m = 0; m <= static_cast<long>(N); ++m) {
        long e = m * (m + 1) / 2;
        side += rat_pow(c, e) * (rat_pow(xi, m) + rat_pow(xi, -m - 1));
    }
    out.bilateral = bilateral;
    out.two_sided = side;
    out.gap = rat_abs(bilateral - side);

    // geometric tail bounds past |n| = N
    Rat ac = rat_abs(c), ax = rat_abs(xi);
    Rat rho_plus = rat_pow(ac, static_cast<long>(N) + 2) * ax;
    Rat rho_minus = rat_pow(ac, static_cast<long>(N) + 1) / ax;
    if (rho_plus >= 1 || rho_minus >= 1) {
        out.pass = false;
        out.tail_bound = Rat(-1);  // window too small for a geometric bound
        return out;
    }
    Rat first_plus = rat_pow(ac, (static_cast<long>(N) + 1) * (static_cast<long>(N) + 2) / 2) *
                     rat_pow(ax, static_cast<long>(N) + 1);
    Rat first_minus = rat_pow(ac, (static_cast<long>(N) + 1) * static_cast<long>(N) / 2) *
                      rat_pow(ax, -static_cast<long>(N) - 1);
    out.tail_bound = first_plus / (1 - rho_plus) + first_minus / (1 - rho_minus);
    out.pass = out.gap <= out.tail_bound;
    return out;
}

}  // namespace gevrey
