#pragma once

#include <optional>
#include <vector>

#include "gevrey/ratfunc.hpp"
#include "gevrey/series.hpp"
#include "gevrey/weyl.hpp"

namespace gevrey {

// Search bounds for annihilator recovery. The solve consumes coefficients
// through z^truncation and holds out the last `margin` usable constraint
// rows as an independent certification check, so truncation must cover
// (max_order+1)(max_degree+1) unknowns plus the margin.
struct GuessConfig {
    long max_order = 2;
    long max_degree = 2;
    std::size_t truncation = 64;
    std::size_t margin = 8;
};

// Nonzero operator of minimal d-order (ties: minimal z-degree, then the
// reduced-echelon representative of the kernel) annihilating f through the
// configured truncation; nullopt if no operator exists within bounds.
// Minimality is certified only within the bounds.
std::optional<DiffOp> guess_operator(const FormalSeries& f, const GuessConfig& cfg);

// Polynomials P_1..P_m, deg <= degree_bound, not all zero, with
// ord(sum P_h Z_h) >= target_order; nullopt only if the defining linear
// system has full rank.
std::optional<std::vector<Poly>> hermite_pade(const std::vector<FormalSeries>& Z,
                                              std::size_t target_order, long degree_bound);

struct RationalReconstruction {
    RationalFunction fn;
    std::optional<PartialFraction> fractions;  // present when the denominator splits over Q
    long denominator_degree = 0;
};

// Minimal-denominator-degree rational function matching every available
// coefficient, requiring `margin` coefficients beyond the 2d+1 a Pade pair
// consumes before a degree-d candidate may stabilize.
std::optional<RationalReconstruction> rational_reconstruct(const FormalSeries& f,
                                                           std::size_t margin = 8);

}  // namespace gevrey
