#include "gevrey/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gevrey {

Poly::Poly(Rat constant) {
    if (constant != 0) coeffs_.push_back(std::move(constant));
}

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::variable() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

Poly Poly::monomial(std::size_t k, Rat c) {
    if (c == 0) return Poly();
    std::vector<Rat> v(k + 1, Rat(0));
    v[k] = std::move(c);
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rat& Poly::coeff(std::size_t k) const {
    static const Rat zero(0);
    return k < coeffs_.size() ? coeffs_[k] : zero;
}

const Rat& Poly::leading() const {
    if (coeffs_.empty()) throw std::domain_error("Poly::leading: zero polynomial");
    return coeffs_.back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
    return Poly(std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> v(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(v));
}

Poly Poly::operator-() const {
    std::vector<Rat> v = coeffs_;
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
}

Poly Poly::operator*(const Rat& c) const {
    if (c == 0) return Poly();
    std::vector<Rat> v = coeffs_;
    for (auto& x : v) x *= c;
    return Poly(std::move(v));
}

Poly Poly::operator/(const Rat& c) const {
    if (c == 0) throw std::invalid_argument("Poly: division by zero scalar");
    std::vector<Rat> v = coeffs_;
    for (auto& x : v) x /= c;
    return Poly(std::move(v));
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rat> v(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * Rat(static_cast<long>(k));
    return Poly(std::move(v));
}

Poly Poly::shifted(const Rat& a) const {
    // Horner in (x + a): p(x + a) built from the top coefficient down.
    Poly result;
    Poly xplusa(std::vector<Rat>{a, Rat(1)});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        result = result * xplusa + Poly(*it);
    return result;
}

Poly Poly::scaled_arg(const Rat& c) const {
    std::vector<Rat> v = coeffs_;
    Rat f(1);
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] *= f;
        f *= c;
    }
    return Poly(std::move(v));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this / leading();
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("Poly::divmod: zero divisor");
    Poly rem = *this;
    if (rem.degree() < divisor.degree()) return {Poly(), rem};
    std::vector<Rat> q(static_cast<std::size_t>(rem.degree() - divisor.degree()) + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        std::size_t shift = static_cast<std::size_t>(rem.degree() - divisor.degree());
        Rat c = rem.leading() / divisor.leading();
        q[shift] = c;
        rem = rem - Poly::monomial(shift, c) * divisor;
    }
    return {Poly(std::move(q)), rem};
}

Poly Poly::divexact(const Poly& divisor) const {
    auto [q, r] = divmod(divisor);
    if (!r.is_zero()) throw std::logic_error("Poly::divexact: nonzero remainder");
    return q;
}

Poly Poly::primitive() const {
    if (is_zero()) return *this;
    Int den_lcm(1);
    for (const auto& c : coeffs_) {
        Int d = c.get_den();
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    Int num_gcd(0);
    for (const auto& c : coeffs_) {
        Int n = c.get_num() * (den_lcm / c.get_den());
        num_gcd = gcd(num_gcd, n);
    }
    Rat scale = make_rat(den_lcm, num_gcd);
    Poly p = *this * scale;
    if (p.leading() < 0) p = -p;
    return p;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Rat& c = coeffs_[k];
        if (c == 0) continue;
        Rat a = rat_abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (k == 0 || a != 1) {
            os << a.get_str();
            if (k > 0) os << "*";
        }
        if (k >= 1) os << var;
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent's cycle variant; n is odd, composite, not a prime power of small primes.
    for (unsigned long c = 1;; ++c) {
        Int x(2), y(2), d(1);
        Int cc(c);
        while (d == 1) {
            x = (x * x + cc) % n;
            y = (y * y + cc) % n;
            y = (y * y + cc) % n;
            Int diff = x - y;
            if (diff < 0) diff = -diff;
            if (diff == 0) break;  // cycle without factor; retry with next c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(Int n, std::map<Int, int>& out) {
    if (n <= 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_integer(Int n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::invalid_argument("factor_integer: zero");
    std::map<Int, int> acc;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            acc[Int(p)] += 1;
            n /= static_cast<unsigned long>(p);
        }
    }
    // trial division by 6k+-1 up to 10^5, then rho for what remains
    for (unsigned long k = 17; k <= 100000 && n > 1; k += (k % 6 == 5) ? 2 : 4) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), k)) {
            acc[Int(k)] += 1;
            n /= k;
        }
    }
    if (n > 1) factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

namespace {

// All positive divisors from a factorization; throws past the cap so root
// finding fails loudly instead of silently dropping candidates.
std::vector<Int> divisors(const std::vector<std::pair<Int, int>>& factors, std::size_t cap) {
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        Int pk(1);
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) {
                divs.push_back(divs[j] * pk);
                if (divs.size() > cap)
                    throw std::runtime_error("rational_roots: too many divisor candidates");
            }
        }
    }
    return divs;
}

}  // namespace

std::vector<std::pair<Rat, int>> rational_roots(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    std::vector<std::pair<Rat, int>> roots;
    Poly work = p.primitive();

    // split off x^k
    int at_zero = 0;
    while (!work.is_zero() && work.coeff(0) == 0) {
        work = work.divexact(Poly::variable());
        ++at_zero;
    }
    if (at_zero > 0) roots.emplace_back(Rat(0), at_zero);
    if (work.degree() < 1) return roots;

    work = work.primitive();
    auto num_divs = divisors(factor_integer(work.coeff(0).get_num()), 1u << 16);
    auto den_divs = divisors(factor_integer(work.leading().get_num()), 1u << 16);

    for (const Int& u : num_divs) {
        for (const Int& v : den_divs) {
            for (int sign : {1, -1}) {
                Rat cand = make_rat(sign * u, v);
                if (work.eval(cand) != 0) continue;
                int mult = 0;
                Poly lin(std::vector<Rat>{-cand, Rat(1)});
                while (work.eval(cand) == 0) {
                    work = work.divexact(lin);
                    ++mult;
                }
                roots.emplace_back(cand, mult);
                if (work.degree() < 1) goto done;
            }
        }
    }
done:
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return roots;
}

}  // namespace gevrey
