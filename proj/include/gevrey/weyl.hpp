#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gevrey/poly.hpp"
#include "gevrey/ratfunc.hpp"
#include "gevrey/series.hpp"

namespace gevrey {

// Element of the Weyl algebra Q[z]<d/dz>, stored in normal order: a sparse
// map from (i, j) to the coefficient of z^i d^j. Zero entries are never kept.
class DiffOp {
  public:
    DiffOp() = default;
    static DiffOp zero() { return DiffOp(); }
    static DiffOp identity() { return monomial(0, 0, Rat(1)); }
    static DiffOp z() { return monomial(1, 0, Rat(1)); }
    static DiffOp d() { return monomial(0, 1, Rat(1)); }
    static DiffOp theta() { return monomial(1, 1, Rat(1)); }
    static DiffOp monomial(long i, long j, Rat c);
    // A = sum_j coeffs[j](z) d^j
    static DiffOp from_coefficients(const std::vector<Poly>& coeffs);

    bool is_zero() const { return terms_.empty(); }
    long order() const;   // max d-power
    long degree() const;  // max z-power
    const std::map<std::pair<long, long>, Rat>& terms() const { return terms_; }
    Poly coefficient_of_d(long j) const;

    DiffOp operator+(const DiffOp& o) const;
    DiffOp operator-(const DiffOp& o) const;
    DiffOp operator*(const Rat& c) const;
    DiffOp operator-() const;
    bool operator==(const DiffOp& o) const { return terms_ == o.terms_; }

    // Strip any common left z-power and rescale to primitive integer
    // coefficients with positive leading term (leading = highest j, then i).
    DiffOp canonical() const;

    // Operator with z replaced by z + a (the local picture at a).
    DiffOp translated(const Rat& a) const;

    std::string to_string() const;

  private:
    void set(long i, long j, Rat c);
    std::map<std::pair<long, long>, Rat> terms_;
    friend DiffOp weyl_multiply(const DiffOp&, const DiffOp&);
};

// Non-commutative product under dz = zd + 1.
DiffOp weyl_multiply(const DiffOp& a, const DiffOp& b);

// A acting on a truncated series. The result order is
// min over monomials of (order(f) + i - j); an operator of order above the
// truncation is rejected.
FormalSeries apply_op(const DiffOp& a, const FormalSeries& f);

// P-recursive relation sum_t r[t](n) u_{n+t} = 0 for all n >= offset, with
// the convention u_k = 0 for k < 0. Leading and trailing polynomials nonzero.
struct Recurrence {
    std::vector<Poly> r;
    long offset = 0;

    long span() const { return static_cast<long>(r.size()) - 1; }
    std::string to_string() const;
};

// The holonomy dictionary: A annihilates sum u_n z^n iff the recurrence
// holds for every n >= offset.
Recurrence op_to_recurrence(const DiffOp& a);
DiffOp recurrence_to_op(const Recurrence& rec);

// Coefficient substitution u_n -> u_n n!^{-s}: if A annihilates the raw
// series of Gevrey order s, the transfer annihilates the associated
// order-0 series, and conversely under s -> -s. Integer s only.
DiffOp borel_transfer(const DiffOp& a, long s);

struct IndicialData {
    Rat point;
    Poly indicial;                              // polynomial in the exponent
    std::vector<std::pair<Rat, int>> exponents; // rational roots with multiplicity
    bool roots_complete = false;                // exponents account for the full degree
};

IndicialData indicial_polynomial(const DiffOp& a, const Rat& xi);

struct SingularPoints {
    Poly leading;  // coefficient of d^order
    std::vector<std::pair<Rat, int>> points;
    bool roots_complete = false;
};

SingularPoints singular_points(const DiffOp& a);

enum class PolygonLocation { Origin, Infinity };

struct NewtonPolygon {
    PolygonLocation location = PolygonLocation::Origin;
    std::vector<std::pair<Rat, long>> slopes;  // (slope, horizontal length), ascending
    bool regular_singular() const;
    std::vector<Rat> slope_set() const;
};

NewtonPolygon newton_polygon(const DiffOp& a, PolygonLocation at);

enum class Verdict { Pass, Fail, Indeterminate };

std::string to_string(Verdict v);

// Dimension of the space of truncated power-series solutions at xi with
// valuation >= vanish_order, by linear algebra on the local recurrence up
// to order trunc (0 picks 4*(order+vanish_order)+20). PASS means the
// dimension equals the operator order at this finite truncation; evidence,
// not proof.
struct TrivialityReport {
    Verdict verdict = Verdict::Indeterminate;
    long dimension = -1;
    long op_order = 0;
    std::size_t trunc = 0;
    IndicialData indicial;
};

TrivialityReport trivial_singularity_check(const DiffOp& a, const Rat& xi, long vanish_order,
                                           std::size_t trunc = 0);

// Borel side of an exponential polynomial sum b_i e^{a_i z}: the rational
// function sum b_i/(1 - a_i z) plus its series expansion.
struct ExpPolyBorel {
    PartialFraction fractions;
    FormalSeries series;
};

ExpPolyBorel exp_poly_borel(const std::vector<std::pair<Rat, Rat>>& pairs, std::size_t trunc);

}  // namespace gevrey
