#pragma once

#include <vector>

#include "gevrey/rational.hpp"

namespace gevrey {

// Shared q-arithmetic state: q itself plus memoized q-integers
// n_q = (1-q^n)/(1-q) and q-factorials n_q! = prod m_q. Over the rationals
// the only roots of unity are +-1, so "q not a root of unity" reduces to
// q != 1 and q != -1; q = 0 is excluded as degenerate.
class QContext {
  public:
    explicit QContext(Rat q);

    const Rat& q() const { return q_; }
    const Rat& q_integer(std::size_t n) const;
    const Rat& q_factorial(std::size_t n) const;

  private:
    void extend(std::size_t n) const;

    Rat q_;
    mutable std::vector<Rat> qint_;   // qint_[n] = n_q
    mutable std::vector<Rat> qfact_;  // qfact_[n] = n_q!
};

inline Rat q_factorial(std::size_t n, const QContext& ctx) { return ctx.q_factorial(n); }

// Exact val_p(n_q!) for p coprime to q, computed by lifting-the-exponent
// on the factors q^m - 1. For p not dividing q(q-1) this satisfies
// val_p(n_q!) >= floor(n/(p-1)).
long q_factorial_valuation(std::size_t n, const QContext& ctx, const Int& p);

// Direct product-and-factor evaluation, quadratic and only for cross-checks.
long q_factorial_valuation_bruteforce(std::size_t n, const QContext& ctx, const Int& p);

}  // namespace gevrey
