#include "gevrey/weyl.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gevrey/linalg.hpp"

namespace gevrey {

namespace {

Int binom(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// falling factorial (x + t)(x + t - 1)...(x + t - j + 1) as a polynomial in x
Poly falling_factorial_poly(long j, long t) {
    Poly p(Rat(1));
    Poly x = Poly::variable();
    for (long a = 0; a < j; ++a) p = p * (x + Poly(Rat(t - a)));
    return p;
}

// falling factorial m(m-1)...(m-j+1) for an integer m
Rat falling_factorial_value(long m, long j) {
    Rat r(1);
    for (long a = 0; a < j; ++a) r *= Rat(m - a);
    return r;
}

}  // namespace

void DiffOp::set(long i, long j, Rat c) {
    if (c == 0)
        terms_.erase({i, j});
    else
        terms_[{i, j}] = std::move(c);
}

DiffOp DiffOp::monomial(long i, long j, Rat c) {
    if (i < 0 || j < 0) throw std::invalid_argument("DiffOp: negative exponent");
    DiffOp a;
    a.set(i, j, std::move(c));
    return a;
}

DiffOp DiffOp::from_coefficients(const std::vector<Poly>& coeffs) {
    DiffOp a;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        for (long i = 0; i <= coeffs[j].degree(); ++i)
            a.set(i, static_cast<long>(j), coeffs[j].coeff(static_cast<std::size_t>(i)));
    return a;
}

long DiffOp::order() const {
    long r = 0;
    for (const auto& [ij, c] : terms_) r = std::max(r, ij.second);
    return r;
}

long DiffOp::degree() const {
    long d = 0;
    for (const auto& [ij, c] : terms_) d = std::max(d, ij.first);
    return d;
}

Poly DiffOp::coefficient_of_d(long j) const {
    Poly p;
    for (const auto& [ij, c] : terms_)
        if (ij.second == j) p = p + Poly::monomial(static_cast<std::size_t>(ij.first), c);
    return p;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
    DiffOp r = *this;
    for (const auto& [ij, c] : o.terms_) {
        auto it = r.terms_.find(ij);
        Rat v = (it == r.terms_.end() ? Rat(0) : it->second) + c;
        r.set(ij.first, ij.second, v);
    }
    return r;
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + (-o); }

DiffOp DiffOp::operator*(const Rat& c) const {
    DiffOp r;
    if (c == 0) return r;
    for (const auto& [ij, v] : terms_) r.terms_[ij] = v * c;
    return r;
}

DiffOp DiffOp::operator-() const { return *this * Rat(-1); }

DiffOp weyl_multiply(const DiffOp& a, const DiffOp& b) {
    // (z^i d^j)(z^k d^l) = sum_t C(j,t) C(k,t) t! z^{i+k-t} d^{j+l-t}
    DiffOp r;
    for (const auto& [ij, c1] : a.terms()) {
        long i = ij.first, j = ij.second;
        for (const auto& [kl, c2] : b.terms()) {
            long k = kl.first, l = kl.second;
            long tmax = std::min(j, k);
            Int tfac(1);
            for (long t = 0; t <= tmax; ++t) {
                if (t > 0) tfac *= t;
                Rat c = c1 * c2 *
                        Rat(binom(static_cast<unsigned long>(j), static_cast<unsigned long>(t)) *
                            binom(static_cast<unsigned long>(k), static_cast<unsigned long>(t)) *
                            tfac);
                auto key = std::make_pair(i + k - t, j + l - t);
                auto it = r.terms_.find(key);
                Rat v = (it == r.terms_.end() ? Rat(0) : it->second) + c;
                r.set(key.first, key.second, v);
            }
        }
    }
    return r;
}

DiffOp DiffOp::canonical() const {
    if (terms_.empty()) return *this;
    long zmin = terms_.begin()->first.first;
    for (const auto& [ij, c] : terms_) zmin = std::min(zmin, ij.first);
    // collect scaling: lcm of denominators over gcd of numerators
    Int den_lcm(1), num_gcd(0);
    for (const auto& [ij, c] : terms_) {
        Int d = c.get_den();
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    for (const auto& [ij, c] : terms_) num_gcd = gcd(num_gcd, Int(c.get_num() * (den_lcm / c.get_den())));
    Rat scale = make_rat(den_lcm, num_gcd);
    DiffOp r;
    for (const auto& [ij, c] : terms_) r.set(ij.first - zmin, ij.second, c * scale);
    // sign: leading term (max j, then max i) positive
    auto lead = std::max_element(r.terms_.begin(), r.terms_.end(), [](const auto& a, const auto& b) {
        if (a.first.second != b.first.second) return a.first.second < b.first.second;
        return a.first.first < b.first.first;
    });
    if (lead->second < 0) r = -r;
    return r;
}

DiffOp DiffOp::translated(const Rat& a) const {
    DiffOp r;
    for (const auto& [ij, c] : terms_) {
        long i = ij.first, j = ij.second;
        // z^i = (w + a)^i
        for (long t = 0; t <= i; ++t) {
            Rat coef = c * Rat(binom(static_cast<unsigned long>(i), static_cast<unsigned long>(t))) *
                       rat_pow(a, i - t);
            auto key = std::make_pair(t, j);
            auto it = r.terms_.find(key);
            Rat v = (it == r.terms_.end() ? Rat(0) : it->second) + coef;
            r.set(key.first, key.second, v);
        }
    }
    return r;
}

std::string DiffOp::to_string() const {
    if (terms_.empty()) return "0";
    // print by descending d-order then descending z-degree
    std::vector<std::pair<std::pair<long, long>, Rat>> items(terms_.begin(), terms_.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.first.second != b.first.second) return a.first.second > b.first.second;
        return a.first.first > b.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [ij, c] : items) {
        Rat a = rat_abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool need_star = false;
        if (a != 1 || (ij.first == 0 && ij.second == 0)) {
            os << a.get_str();
            need_star = true;
        }
        if (ij.first > 0) {
            if (need_star) os << "*";
            os << "z";
            if (ij.first > 1) os << "^" << ij.first;
            need_star = true;
        }
        if (ij.second > 0) {
            if (need_star) os << "*";
            os << "D";
            if (ij.second > 1) os << "^" << ij.second;
        }
    }
    return os.str();
}

FormalSeries apply_op(const DiffOp& a, const FormalSeries& f) {
    if (a.is_zero()) return FormalSeries::zero(f.order());
    long n = static_cast<long>(f.order());
    if (n < a.order())
        throw std::invalid_argument("apply_op: series truncation below operator order");
    long out_order = n;
    for (const auto& [ij, c] : a.terms()) out_order = std::min(out_order, n + ij.first - ij.second);
    if (out_order < 0) throw std::invalid_argument("apply_op: truncation too short");
    std::vector<Rat> out(static_cast<std::size_t>(out_order) + 1, Rat(0));
    for (const auto& [ij, c] : a.terms()) {
        long i = ij.first, j = ij.second;
        for (long m = 0; m <= out_order; ++m) {
            long src = m - i + j;
            if (src < 0 || src > n) continue;
            out[static_cast<std::size_t>(m)] +=
                c * falling_factorial_value(src, j) * f.coeff(static_cast<std::size_t>(src));
        }
    }
    return FormalSeries(std::move(out));
}

std::string Recurrence::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t t = 0; t < r.size(); ++t) {
        if (r[t].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << r[t].to_string("n") << ")*u[n+" << t << "]";
    }
    os << " = 0  for n >= " << offset;
    return os.str();
}

Recurrence op_to_recurrence(const DiffOp& a) {
    if (a.is_zero()) throw std::invalid_argument("op_to_recurrence: zero operator");
    long tau_min = 0, tau_max = 0;
    bool init = false;
    for (const auto& [ij, c] : a.terms()) {
        long tau = ij.second - ij.first;
        if (!init) {
            tau_min = tau_max = tau;
            init = true;
        }
        tau_min = std::min(tau_min, tau);
        tau_max = std::max(tau_max, tau);
    }
    Recurrence rec;
    rec.offset = tau_min;
    rec.r.assign(static_cast<std::size_t>(tau_max - tau_min) + 1, Poly());
    // relation at z^m: sum c * fall(m - i + j, j) u_{m-i+j}; substitute n = m + tau_min
    for (const auto& [ij, c] : a.terms()) {
        long t = (ij.second - ij.first) - tau_min;
        rec.r[static_cast<std::size_t>(t)] =
            rec.r[static_cast<std::size_t>(t)] + falling_factorial_poly(ij.second, t) * c;
    }
    return rec;
}

DiffOp recurrence_to_op(const Recurrence& rec) {
    if (rec.r.empty() || rec.r.front().is_zero() || rec.r.back().is_zero())
        throw std::invalid_argument("recurrence_to_op: leading/trailing polynomial must be nonzero");
    long T = rec.span();
    // The rebuilt operator enforces the relation for every n >= -T. Indices
    // n in [-T, offset) where some term is genuinely active must be killed
    // first, or the operator would constrain more than the recurrence does.
    std::vector<long> extra;
    for (long n = -T; n < rec.offset; ++n) {
        bool active = false;
        for (long t = 0; t <= T && !active; ++t) {
            if (n + t < 0) continue;  // u index negative: term vanishes by convention
            if (!rec.r[static_cast<std::size_t>(t)].is_zero() &&
                rec.r[static_cast<std::size_t>(t)].eval(Rat(n)) != 0)
                active = true;
        }
        if (active) extra.push_back(n);
    }
    Poly killer(Rat(1));
    for (long k : extra) killer = killer * Poly(std::vector<Rat>{Rat(-k), Rat(1)});

    // A = sum_t rt(theta - T) z^{T-t}
    DiffOp theta = DiffOp::theta();
    DiffOp acc;
    for (long t = 0; t <= T; ++t) {
        Poly rt = rec.r[static_cast<std::size_t>(t)] * killer;
        if (rt.is_zero()) continue;
        Poly shifted = rt.shifted(Rat(-T));  // evaluate at theta - T
        // horner in theta
        DiffOp val;
        for (long k = shifted.degree(); k >= 0; --k) {
            val = weyl_multiply(val, theta);
            val = val + DiffOp::monomial(0, 0, shifted.coeff(static_cast<std::size_t>(k)));
        }
        acc = acc + weyl_multiply(val, DiffOp::monomial(T - t, 0, Rat(1)));
    }
    return acc.canonical();
}

DiffOp borel_transfer(const DiffOp& a, long s) {
    if (s == 0) throw std::invalid_argument("borel_transfer: s must be nonzero");
    if (a.is_zero()) throw std::invalid_argument("borel_transfer: zero operator");
    if (a.order() == 0) return a.canonical();  // multiplication operators transfer to themselves
    Recurrence rec = op_to_recurrence(a);
    long T = rec.span();
    Poly x = Poly::variable();
    Recurrence out;
    out.offset = rec.offset;
    out.r.assign(rec.r.size(), Poly());
    for (long t = 0; t <= T; ++t) {
        if (rec.r[static_cast<std::size_t>(t)].is_zero()) continue;
        Poly factor(Rat(1));
        if (s > 0) {
            // ((n+t)!/n!)^s
            for (long j = 1; j <= t; ++j) factor = factor * (x + Poly(Rat(j)));
            Poly powed(Rat(1));
            for (long e = 0; e < s; ++e) powed = powed * factor;
            out.r[static_cast<std::size_t>(t)] = rec.r[static_cast<std::size_t>(t)] * powed;
        } else {
            // clear (n!/{(n+t)!})^{|s|} by multiplying through by ((n+T)!/n!)^{|s|}
            for (long j = t + 1; j <= T; ++j) factor = factor * (x + Poly(Rat(j)));
            Poly powed(Rat(1));
            for (long e = 0; e < -s; ++e) powed = powed * factor;
            out.r[static_cast<std::size_t>(t)] = rec.r[static_cast<std::size_t>(t)] * powed;
        }
    }
    return recurrence_to_op(out);
}

IndicialData indicial_polynomial(const DiffOp& a, const Rat& xi) {
    if (a.is_zero()) throw std::invalid_argument("indicial_polynomial: zero operator");
    DiffOp local = a.translated(xi);
    long mu = 0;
    bool init = false;
    for (const auto& [ij, c] : local.terms()) {
        long w = ij.first - ij.second;
        if (!init || w < mu) mu = w, init = true;
    }
    Poly phi;
    for (const auto& [ij, c] : local.terms()) {
        if (ij.first - ij.second != mu) continue;
        phi = phi + falling_factorial_poly(ij.second, 0) * c;
    }
    IndicialData data;
    data.point = xi;
    data.indicial = phi.primitive();
    try {
        data.exponents = rational_roots(data.indicial);
        long total = 0;
        for (auto& [r, m] : data.exponents) total += m;
        data.roots_complete = (total == data.indicial.degree());
    } catch (const std::runtime_error&) {
        data.exponents.clear();
        data.roots_complete = false;
    }
    return data;
}

SingularPoints singular_points(const DiffOp& a) {
    if (a.is_zero()) throw std::invalid_argument("singular_points: zero operator");
    SingularPoints sp;
    sp.leading = a.coefficient_of_d(a.order()).primitive();
    if (sp.leading.degree() < 1) {
        sp.roots_complete = true;  // constant leading coefficient: no finite singularity
        return sp;
    }
    try {
        sp.points = rational_roots(sp.leading);
        long total = 0;
        for (auto& [r, m] : sp.points) total += m;
        sp.roots_complete = (total == sp.leading.degree());
    } catch (const std::runtime_error&) {
        sp.roots_complete = false;
    }
    return sp;
}

bool NewtonPolygon::regular_singular() const {
    for (const auto& [s, len] : slopes)
        if (s != 0) return false;
    return true;
}

std::vector<Rat> NewtonPolygon::slope_set() const {
    std::vector<Rat> out;
    for (const auto& [s, len] : slopes)
        if (out.empty() || out.back() != s) out.push_back(s);
    return out;
}

namespace {

// Shared hull walk: given one point (x, y) per d-level, emit the slope-0
// stretch left of the anchor (the rightmost minimal-y vertex) and the
// convex minorant edges to the right of it.
NewtonPolygon polygon_from_points(std::vector<std::pair<long, Rat>> pts, PolygonLocation at) {
    NewtonPolygon np;
    np.location = at;
    if (pts.empty()) return np;
    std::sort(pts.begin(), pts.end());
    // anchor: minimal y, rightmost x on ties
    std::size_t anchor = 0;
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (pts[k].second <= pts[anchor].second) anchor = k;
    if (pts[anchor].first > 0) np.slopes.emplace_back(Rat(0), pts[anchor].first);
    // convex minorant from anchor to the right
    std::vector<std::pair<long, Rat>> hull{pts[anchor]};
    for (std::size_t k = anchor + 1; k < pts.size(); ++k) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            // drop b if it lies above segment a -> pts[k]
            Rat lhs = (b.second - a.second) * Rat(pts[k].first - a.first);
            Rat rhs = (pts[k].second - a.second) * Rat(b.first - a.first);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pts[k]);
    }
    for (std::size_t k = 1; k < hull.size(); ++k) {
        long run = hull[k].first - hull[k - 1].first;
        Rat slope = (hull[k].second - hull[k - 1].second) / Rat(run);
        np.slopes.emplace_back(slope, run);
    }
    return np;
}

}  // namespace

NewtonPolygon newton_polygon(const DiffOp& a, PolygonLocation at) {
    if (a.is_zero()) throw std::invalid_argument("newton_polygon: zero operator");
    std::vector<std::pair<long, Rat>> pts;
    for (long j = 0; j <= a.order(); ++j) {
        Poly cj = a.coefficient_of_d(j);
        if (cj.is_zero()) continue;
        if (at == PolygonLocation::Origin) {
            long v0 = 0;
            while (cj.coeff(static_cast<std::size_t>(v0)) == 0) ++v0;
            pts.emplace_back(j, Rat(v0 - j));
        } else {
            pts.emplace_back(j, Rat(j - cj.degree()));
        }
    }
    return polygon_from_points(std::move(pts), at);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        default: return "INDETERMINATE";
    }
}

TrivialityReport trivial_singularity_check(const DiffOp& a, const Rat& xi, long vanish_order,
                                           std::size_t trunc) {
    if (a.is_zero()) throw std::invalid_argument("trivial_singularity_check: zero operator");
    if (vanish_order < 0) throw std::invalid_argument("trivial_singularity_check: negative order");
    TrivialityReport rep;
    rep.op_order = a.order();
    rep.indicial = indicial_polynomial(a, xi);
    std::size_t M = trunc != 0
                        ? trunc
                        : static_cast<std::size_t>(4 * (rep.op_order + vanish_order) + 20);
    if (M < static_cast<std::size_t>(rep.op_order + vanish_order) + 4)
        throw std::invalid_argument("trivial_singularity_check: truncation too small");
    rep.trunc = M;

    bool is_singular = a.coefficient_of_d(a.order()).eval(xi) == 0;
    if (is_singular && !rep.indicial.roots_complete) {
        rep.verdict = Verdict::Indeterminate;
        return rep;
    }

    DiffOp local = a.translated(xi);
    Recurrence rec = op_to_recurrence(local);
    long T = rec.span();

    QMatrix rows;
    std::size_t cols = M + 1;
    for (long j = 0; j < vanish_order; ++j) {
        std::vector<Rat> row(cols, Rat(0));
        row[static_cast<std::size_t>(j)] = 1;
        rows.push_back(std::move(row));
    }
    for (long n = rec.offset; n + T <= static_cast<long>(M); ++n) {
        std::vector<Rat> row(cols, Rat(0));
        bool nonzero = false;
        for (long t = 0; t <= T; ++t) {
            long idx = n + t;
            if (idx < 0) continue;
            Rat c = rec.r[static_cast<std::size_t>(t)].eval(Rat(n));
            if (c == 0) continue;
            row[static_cast<std::size_t>(idx)] += c;
            nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
    }
    std::size_t dim = kernel_basis(std::move(rows), cols).size();
    rep.dimension = static_cast<long>(dim);
    rep.verdict = (rep.dimension == rep.op_order) ? Verdict::Pass : Verdict::Fail;
    return rep;
}

ExpPolyBorel exp_poly_borel(const std::vector<std::pair<Rat, Rat>>& pairs, std::size_t trunc) {
    std::set<Rat> seen;
    for (const auto& [ai, bi] : pairs)
        if (!seen.insert(ai).second)
            throw std::invalid_argument("exp_poly_borel: repeated exponent coefficient");
    Poly poly_part;
    std::vector<PartialFractionTerm> terms;
    for (const auto& [ai, bi] : pairs) {
        if (bi == 0) continue;
        if (ai == 0) {
            poly_part = poly_part + Poly(bi);  // b * e^{0 z} contributes the constant b
        } else {
            // b/(1 - a z) = (-b/a)/(z - 1/a)
            terms.push_back({1 / ai, -bi / ai, 1});
        }
    }
    ExpPolyBorel out{PartialFraction(poly_part, terms), FormalSeries::zero(trunc)};
    std::vector<Rat> coeffs(trunc + 1, Rat(0));
    for (const auto& [ai, bi] : pairs) {
        Rat pw(1);
        for (std::size_t n = 0; n <= trunc; ++n) {
            coeffs[n] += bi * pw;
            pw *= ai;
        }
    }
    out.series = FormalSeries(std::move(coeffs));
    return out;
}

}  // namespace gevrey
