#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gevrey/rational.hpp"

namespace gevrey {

// Truncated power series over Q. A series of order N knows its coefficients
// for z^0..z^N and nothing beyond; binary operations report the largest
// order they can still certify.
class FormalSeries {
  public:
    FormalSeries() : coeffs_{Rat(0)} {}
    explicit FormalSeries(std::vector<Rat> coeffs);
    static FormalSeries zero(std::size_t order);

    std::size_t order() const { return coeffs_.size() - 1; }
    const Rat& coeff(std::size_t n) const;
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    bool is_zero() const;

    FormalSeries truncated(std::size_t order) const;

    FormalSeries operator+(const FormalSeries& o) const;
    FormalSeries operator-(const FormalSeries& o) const;
    FormalSeries operator*(const FormalSeries& o) const;  // Cauchy product
    FormalSeries operator*(const Rat& c) const;
    FormalSeries operator-() const;

    FormalSeries derivative() const;         // order drops by one
    FormalSeries theta() const;              // z d/dz, order preserved
    FormalSeries integral() const;           // antiderivative, zero constant term
    FormalSeries shift_up(std::size_t k = 1) const;  // multiply by z^k
    FormalSeries inverse() const;            // requires a unit constant term

    bool agrees_with(const FormalSeries& o, std::size_t through_order) const;

    std::string to_string(const std::string& var = "z") const;

  private:
    std::vector<Rat> coeffs_;
};

// A series of Gevrey order s = p/q (lowest terms, q >= 1): the raw
// coefficient of z^n is ([n/q]!)^p * a_n and the a_n are the normalized
// coefficients. s = 0 makes both views coincide.
class GevreySeries {
  public:
    GevreySeries(Rat order_s, std::vector<Rat> normalized);
    static GevreySeries from_raw(const Rat& order_s, const std::vector<Rat>& raw);

    const Rat& gevrey_order() const { return s_; }
    std::size_t order() const { return normalized_.size() - 1; }
    const std::vector<Rat>& normalized() const { return normalized_; }
    Rat raw_coeff(std::size_t n) const;
    std::vector<Rat> raw() const;

    // Weight ([n/q]!)^p attached to z^n.
    Rat weight(std::size_t n) const;

  private:
    Rat s_;
    long wp_ = 0;   // numerator of s
    long wq_ = 1;   // denominator of s
    std::vector<Rat> normalized_;
};

// The F <-> f dictionary: strip or attach the factorial weights.
FormalSeries borel_normalize(const GevreySeries& F);
GevreySeries laplace_denormalize(const FormalSeries& f, const Rat& s);

// G with (z - xi) G = F, computed on raw views and renormalized; the
// normalized coefficients then satisfy
//   b_n = - sum_{k<=n} (w_k/w_n) xi^{k-n-1} a_k
// which is the division recurrence in both the s < 0 and s = p/q > 0 shapes.
GevreySeries divide_linear(const GevreySeries& F, const Rat& xi);

// Growth diagnostics for the normalized coefficients. The per-index bases
// are exact; the 1/n-th root is summarized through integer bit lengths, and
// the (G)-verdict is a finite-window heuristic, not a decision.
struct ArithProfile {
    std::vector<Rat> max_abs;   // max_abs[n] = max |a_0..a_n|
    std::vector<Int> den_lcm;   // den_lcm[n] = lcm of denominators of a_0..a_n
    // bit lengths divided by n, the root statistics in log2 scale
    std::vector<Rat> conj_root_log2;
    std::vector<Rat> den_root_log2;
    bool conj_bounded = false;
    bool den_bounded = false;
    bool consistent_with_G() const { return conj_bounded && den_bounded; }
};

ArithProfile arith_profile(const GevreySeries& F);

// min over the tail window [N/2, N] of val_p(a_n)/n, capped at 1; a finite
// truncation estimate of the p-adic convergence scale, not a certificate.
Rat padic_radius_estimate(const FormalSeries& f, const Int& p);

Int factorial(std::size_t n);

}  // namespace gevrey
