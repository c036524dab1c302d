#include "gevrey/ratfunc.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gevrey {

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFunction: zero denominator");
    reduce();
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Poly(Rat(1));
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divexact(g);
        den_ = den_.divexact(g);
    }
    Rat lead = den_.leading();
    num_ = num_ / lead;
    den_ = den_ / lead;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw std::invalid_argument("RationalFunction: division by zero");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;  // canonical form makes this exact
}

RationalFunction RationalFunction::scaled_arg(const Rat& c) const {
    return RationalFunction(num_.scaled_arg(c), den_.scaled_arg(c));
}

Rat RationalFunction::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw std::domain_error("RationalFunction::eval: pole");
    return num_.eval(x) / d;
}

long RationalFunction::degree() const {
    if (num_.is_zero()) return -(1L << 30);
    return num_.degree() - den_.degree();
}

std::string RationalFunction::to_string(const std::string& var) const {
    if (is_polynomial()) return num_.to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

PartialFraction::PartialFraction(Poly polynomial_part, std::vector<PartialFractionTerm> terms)
    : poly_(std::move(polynomial_part)), terms_(std::move(terms)) {
    normalize();
}

void PartialFraction::normalize() {
    std::vector<PartialFractionTerm> merged;
    for (auto& t : terms_) {
        if (t.coefficient == 0) continue;
        if (t.multiplicity < 1) throw std::invalid_argument("PartialFraction: multiplicity < 1");
        auto it = std::find_if(merged.begin(), merged.end(), [&](const PartialFractionTerm& m) {
            return m.pole == t.pole && m.multiplicity == t.multiplicity;
        });
        if (it != merged.end())
            it->coefficient += t.coefficient;
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const PartialFractionTerm& m) { return m.coefficient == 0; }),
                 merged.end());
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
        if (a.pole != b.pole) return a.pole < b.pole;
        return a.multiplicity < b.multiplicity;
    });
    terms_ = std::move(merged);
}

RationalFunction PartialFraction::to_rational_function() const {
    RationalFunction acc{poly_};
    for (const auto& t : terms_) {
        Poly lin(std::vector<Rat>{-t.pole, Rat(1)});
        Poly den(Rat(1));
        for (int i = 0; i < t.multiplicity; ++i) den = den * lin;
        acc = acc + RationalFunction(Poly(t.coefficient), den);
    }
    return acc;
}

std::vector<Rat> PartialFraction::series_at_zero(std::size_t N) const {
    std::vector<Rat> out(N + 1, Rat(0));
    for (std::size_t k = 0; k <= N; ++k) out[k] = poly_.coeff(k);
    for (const auto& t : terms_) {
        if (t.pole == 0)
            throw std::domain_error("PartialFraction::series_at_zero: pole at the origin");
        // beta/(z-a)^m = beta*(-a)^{-m} * sum_n C(n+m-1, m-1) (z/a)^n
        Rat inv_a = 1 / t.pole;
        Rat scale = t.coefficient * rat_pow(-inv_a, t.multiplicity);
        Rat binom(1);
        Rat zpow(1);
        for (std::size_t n = 0; n <= N; ++n) {
            out[n] += scale * binom * zpow;
            binom = binom * Rat(static_cast<long>(n + t.multiplicity)) /
                    Rat(static_cast<long>(n + 1));
            zpow *= inv_a;
        }
    }
    return out;
}

std::vector<Rat> PartialFraction::tail_at_infinity(std::size_t N) const {
    if (!poly_.is_zero())
        throw std::domain_error("PartialFraction::tail_at_infinity: polynomial part present");
    std::vector<Rat> out(N + 1, Rat(0));
    for (const auto& t : terms_) {
        // 1/(z-a)^m = sum_{n>=m-1} C(n, m-1) a^{n-m+1} z^{-n-1}
        int m = t.multiplicity;
        for (std::size_t n = static_cast<std::size_t>(m - 1); n <= N; ++n) {
            Rat binom(1);
            for (int i = 0; i < m - 1; ++i)
                binom = binom * Rat(static_cast<long>(n - i)) / Rat(i + 1);
            out[n] += t.coefficient * binom * rat_pow(t.pole, static_cast<long>(n) - m + 1);
        }
    }
    return out;
}

std::string PartialFraction::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    if (!poly_.is_zero()) {
        os << poly_.to_string(var);
        first = false;
    }
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.coefficient.get_str() << ")/(" << var;
        if (t.pole != 0) os << (t.pole > 0 ? " - " : " + ") << rat_abs(t.pole).get_str();
        os << ")";
        if (t.multiplicity > 1) os << "^" << t.multiplicity;
    }
    if (first) os << "0";
    return os.str();
}

std::optional<PartialFraction> partial_fractions(const RationalFunction& f) {
    auto [quot, rem] = f.num().divmod(f.den());
    Poly den = f.den();
    Poly p = rem;
    std::vector<PartialFractionTerm> terms;

    std::vector<std::pair<Rat, int>> roots;
    try {
        roots = rational_roots(den);
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
    long total = 0;
    for (auto& [r, m] : roots) total += m;
    if (total != den.degree()) return std::nullopt;  // irrational poles present

    // Peel poles one multiplicity layer at a time: with den = (z-a)^m * rest,
    // the top coefficient at a is p(a)/rest(a).
    for (auto& [alpha, mult] : roots) {
        Poly lin(std::vector<Rat>{-alpha, Rat(1)});
        for (int m = mult; m >= 1; --m) {
            Poly rest = den;
            for (int i = 0; i < m; ++i) rest = rest.divexact(lin);
            Rat c = p.eval(alpha) / rest.eval(alpha);
            if (c != 0) terms.push_back({alpha, c, m});
            // p/den - c/(z-a)^m = (p - c*rest)/den, with numerator divisible by (z-a)
            p = (p - rest * c).divexact(lin);
            den = den.divexact(lin);
        }
    }
    if (!p.is_zero() && den.degree() == 0) {
        quot = quot + p / den.leading();
        p = Poly();
    }
    if (!p.is_zero()) throw std::logic_error("partial_fractions: residue left over");
    return PartialFraction(std::move(quot), std::move(terms));
}

}  // namespace gevrey
