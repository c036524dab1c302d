#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gevrey/rational.hpp"

namespace gevrey {

// Dense univariate polynomial over Q. coeffs_[k] is the coefficient of x^k;
// the zero polynomial stores an empty vector and reports degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(Rat constant);
    explicit Poly(std::vector<Rat> coeffs);
    static Poly variable();                    // x
    static Poly monomial(std::size_t k, Rat c);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const Rat& coeff(std::size_t k) const;
    const Rat& leading() const;
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Rat& c) const;
    Poly operator/(const Rat& c) const;
    bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

    Rat eval(const Rat& x) const;
    Poly derivative() const;
    Poly shifted(const Rat& a) const;    // p(x + a)
    Poly scaled_arg(const Rat& c) const; // p(c x)
    Poly monic() const;

    // Quotient and remainder with deg(rem) < deg(divisor); divisor nonzero.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly divexact(const Poly& divisor) const;  // throws if remainder is nonzero

    // Primitive integer multiple: unique positive-leading integer-coefficient
    // scalar multiple with coefficient gcd 1.
    Poly primitive() const;

    std::string to_string(const std::string& var = "x") const;

  private:
    void trim();
    std::vector<Rat> coeffs_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic gcd

// All rational roots with multiplicities, exact. Requires factoring the
// extreme integer coefficients; throws std::runtime_error if a coefficient
// resists factoring at sane bounds (callers treat that as "indeterminate").
std::vector<std::pair<Rat, int>> rational_roots(const Poly& p);

// Prime factorization of |n| by trial division plus Pollard rho.
std::vector<std::pair<Int, int>> factor_integer(Int n);

}  // namespace gevrey
