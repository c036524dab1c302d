#pragma once

#include <string>

#include "gevrey/rational.hpp"

namespace gevrey {

// val_p(n!) by Legendre's formula, evaluated as sum of floor(n/p^i).
long legendre_valuation(const Int& n, const Int& p);

// Fixed-precision p-adic number: p^valuation * unit with the unit known
// modulo p^precision. An exact zero is flagged rather than encoded as a
// huge valuation. Arithmetic never claims more precision than the inputs
// carry: the unit of x+y is known modulo p^k only when both absolute
// precisions valuation+precision reach valuation(x+y)+k.
class PAdicValue {
  public:
    PAdicValue(Int prime, long precision, const Rat& value);  // exact input, truncated
    static PAdicValue exact_zero(Int prime, long precision);
    // Raw constructor: value = p^valuation * unit, unit already reduced mod p^precision.
    static PAdicValue from_parts(Int prime, long precision, long valuation, Int unit);

    const Int& prime() const { return prime_; }
    long precision() const { return precision_; }
    bool is_exact_zero() const { return exact_zero_; }
    // Meaningless for an exact zero; callers must check first.
    long valuation() const;
    const Int& unit_residue() const { return unit_; }

    // Residue of the whole value mod p^k for k <= valuation+precision (requires valuation >= 0).
    Int residue_mod(long k) const;

    PAdicValue operator+(const PAdicValue& o) const;
    PAdicValue operator-(const PAdicValue& o) const;
    PAdicValue operator*(const PAdicValue& o) const;

    // Reduce to a lower precision; used by the monotonicity tests.
    PAdicValue truncated(long precision) const;

    bool congruent(const Rat& x) const;  // does x match to the stored precision?

    std::string to_string() const;

  private:
    PAdicValue() = default;
    void normalize();

    Int prime_;
    long precision_ = 0;
    bool exact_zero_ = false;
    long valuation_ = 0;
    Int unit_;  // in [0, p^precision), not divisible by p unless precision exhausted
};

}  // namespace gevrey
