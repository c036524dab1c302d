#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gevrey/padic.hpp"
#include "gevrey/poly.hpp"
#include "gevrey/weyl.hpp"

namespace gevrey {

// The divergent series sum_{n>=0} P(n) (n!)^s xi^n.
struct FactorialSeriesSpec {
    Poly P;
    long weight_exponent = 1;  // s >= 1
    Rat xi = Rat(1);
};

// Unique decomposition P(n) = (n+1) Q(n+1) - Q(n) + c. When c = 0 the
// partial sums telescope: sum_{n<=N} P(n) n! = Q(N+1)(N+1)! - Q(0), so the
// p-adic value of the full series is -Q(0) at every prime.
struct TelescopeResult {
    Poly Q;
    Rat residual_c;
    std::optional<Rat> universal_value;
};

TelescopeResult telescope_decompose(const Poly& P);

// Value of the series mod p^precision: the truncation index is chosen from
// Legendre's formula so every discarded term has valuation >= precision.
PAdicValue padic_sum(const FactorialSeriesSpec& spec, const Int& p, long precision);

struct UniversalCheck {
    Int prime;
    PAdicValue value;
    bool matches_universal = false;
};

struct UniversalReport {
    TelescopeResult telescope;
    std::vector<UniversalCheck> checks;
    bool all_match = false;
};

// Cross-check padic_sum against the telescoped value at each listed prime.
UniversalReport verify_universal(const FactorialSeriesSpec& spec, const std::vector<Int>& primes,
                                 long precision);

// End-to-end pipeline: build f = 1 + sum n*n! z^n, recover an annihilator
// within (order <= 2, degree <= 3), and check that 1 is a trivial
// singularity with a full solution basis vanishing to order >= 1.
struct PipelineReport {
    Verdict verdict = Verdict::Indeterminate;
    DiffOp annihilator;
    TrivialityReport triviality;
};

PipelineReport example33_pipeline(std::size_t truncation = 120);

}  // namespace gevrey
