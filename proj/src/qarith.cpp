#include "gevrey/qarith.hpp"

#include <stdexcept>

#include "gevrey/padic.hpp"

namespace gevrey {

QContext::QContext(Rat q) : q_(std::move(q)) {
    if (q_ == 0 || q_ == 1 || q_ == -1)
        throw std::invalid_argument("QContext: q must be nonzero and not a root of unity");
    qint_ = {Rat(0)};
    qfact_ = {Rat(1)};  // 0_q! = 1, an empty product
}

void QContext::extend(std::size_t n) const {
    while (qint_.size() <= n) {
        std::size_t m = qint_.size();
        // m_q = (1 - q^m)/(1 - q) = 1 + q + ... + q^(m-1)
        Rat qi = qint_.back() * q_ + 1;
        qint_.push_back(qi);
        qfact_.push_back(qfact_.back() * qi);
    }
}

const Rat& QContext::q_integer(std::size_t n) const {
    extend(n);
    return qint_[n];
}

const Rat& QContext::q_factorial(std::size_t n) const {
    extend(n);
    return qfact_[n];
}

namespace {

// val_p(a^m - b^m) for p coprime to a and b, a != +-b handled by callers.
// Used only for the small base cases of the closed-form sum; m stays tiny.
long pow_diff_valuation(const Int& a, const Int& b, unsigned long m, const Int& p) {
    Int diff = int_pow(a, m) - int_pow(b, m);
    if (diff == 0) throw std::logic_error("pow_diff_valuation: zero difference");
    return int_valuation(diff, p);
}

// Multiplicative order of a*b^{-1} mod p (p prime, p coprime to a, b).
unsigned long mult_order(const Int& a, const Int& b, const Int& p) {
    Int binv;
    if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::invalid_argument("mult_order: b not invertible");
    Int g = a * binv % p;
    if (g < 0) g += p;
    Int x = g;
    unsigned long d = 1;
    while (x != 1) {
        x = x * g % p;
        ++d;
        if (Int(d) >= p) throw std::logic_error("mult_order: order exceeded p-1");
    }
    return d;
}

}  // namespace

long q_factorial_valuation(std::size_t n, const QContext& ctx, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("q_factorial_valuation: p is not prime");
    const Rat& q = ctx.q();
    const Int a = q.get_num();
    const Int b = q.get_den();
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) ||
        mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("q_factorial_valuation: p divides q");
    if (n == 0) return 0;
    const Int nn(static_cast<unsigned long>(n));

    // val_p(m_q) = val_p(a^m - b^m) - val_p(a - b), both sides exact since p | b never.
    long base_shift = static_cast<long>(n) * int_valuation(a - b, p);

    long sum = 0;  // sum over m <= n of val_p(a^m - b^m)
    if (p == 2) {
        // a, b odd. Odd m: val_2(a-b). Even m: val_2(a-b)+val_2(a+b)+val_2(m)-1.
        long v1 = int_valuation(a - b, Int(2));
        long half = static_cast<long>(n / 2);
        sum = static_cast<long>(n) * v1;
        if (half > 0) {
            long v2 = int_valuation(a + b, Int(2));
            // sum of val_2(m) over even m <= n equals half + val_2(half!)
            long val_even = half + legendre_valuation(Int(half), Int(2));
            sum += half * (v2 - 1) + val_even;
        }
    } else {
        unsigned long d = mult_order(a, b, p);
        unsigned long reps = n / d;  // multiples of d up to n
        if (reps > 0) {
            long e0 = pow_diff_valuation(a, b, d, p);
            // val_p(a^{jd} - b^{jd}) = e0 + val_p(j) by lifting the exponent
            sum = static_cast<long>(reps) * e0 +
                  legendre_valuation(Int(reps), p);
        }
    }
    (void)nn;
    return sum - base_shift;
}

long q_factorial_valuation_bruteforce(std::size_t n, const QContext& ctx, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("q_factorial_valuation: p is not prime");
    if (rat_valuation(ctx.q(), p) != 0)
        throw std::invalid_argument("q_factorial_valuation: p divides q");
    long total = 0;
    for (std::size_t m = 1; m <= n; ++m) {
        total += rat_valuation(ctx.q_integer(m), p);
    }
    return total;
}

}  // namespace gevrey
