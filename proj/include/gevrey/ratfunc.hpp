#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gevrey/poly.hpp"

namespace gevrey {

// Reduced fraction of polynomials; denominator monic and coprime to the
// numerator at all times.
class RationalFunction {
  public:
    RationalFunction() : num_(), den_(Rat(1)) {}
    RationalFunction(Poly num, Poly den);
    explicit RationalFunction(Poly p) : num_(std::move(p)), den_(Rat(1)) {}
    explicit RationalFunction(const Rat& c) : num_(c), den_(Rat(1)) {}

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction operator-() const;
    bool operator==(const RationalFunction& o) const;

    RationalFunction scaled_arg(const Rat& c) const;  // f(c z)
    Rat eval(const Rat& x) const;                     // throws on a pole

    // Degree at infinity: deg num - deg den; the zero function reports a
    // sentinel well below any real degree.
    long degree() const;

    std::string to_string(const std::string& var = "z") const;

  private:
    void reduce();
    Poly num_, den_;
};

// Sum of a polynomial and terms beta/(z - alpha)^mult with distinct
// (alpha, mult) pairs.
struct PartialFractionTerm {
    Rat pole;
    Rat coefficient;
    int multiplicity = 1;
};

class PartialFraction {
  public:
    PartialFraction() = default;
    PartialFraction(Poly polynomial_part, std::vector<PartialFractionTerm> terms);

    const Poly& polynomial_part() const { return poly_; }
    const std::vector<PartialFractionTerm>& terms() const { return terms_; }

    RationalFunction to_rational_function() const;

    // Taylor coefficients a_0..a_N at the origin; every pole must be nonzero.
    std::vector<Rat> series_at_zero(std::size_t N) const;

    // Coefficients of z^{-n-1}, n = 0..N, of the expansion at infinity;
    // the polynomial part must vanish for this to make sense.
    std::vector<Rat> tail_at_infinity(std::size_t N) const;

    std::string to_string(const std::string& var = "z") const;

  private:
    void normalize();
    Poly poly_;
    std::vector<PartialFractionTerm> terms_;
};

// Exact decomposition over Q; nullopt when the denominator has a factor
// with no rational root (the fraction then has no representation here).
std::optional<PartialFraction> partial_fractions(const RationalFunction& f);

}  // namespace gevrey
