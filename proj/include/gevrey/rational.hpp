#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gevrey {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class does not canonicalize on construction; every Rat that leaves
// this helper is in lowest terms with positive denominator.
inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_from_string(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("rat_from_string: bad literal '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("rat_from_string: zero denominator");
    r.canonicalize();
    return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw std::domain_error("rat_pow: 0 to a negative power");
        return Rat(0);
    }
    Rat r;
    auto ue = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), ue);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), ue);
    if (e < 0) {
        mpq_inv(r.get_mpq_t(), r.get_mpq_t());
    }
    return r;  // powers of a canonical rational stay canonical
}

// Exact p-adic valuation of a nonzero integer.
inline long int_valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::domain_error("int_valuation: valuation of zero");
    Int q;
    return static_cast<long>(mpz_remove(q.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline long rat_valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::domain_error("rat_valuation: valuation of zero");
    long vn = (x.get_num() == 0) ? 0 : int_valuation(x.get_num(), p);
    long vd = (x.get_den() == 1) ? 0 : int_valuation(x.get_den(), p);
    return vn - vd;
}

inline bool is_prime(const Int& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 32) != 0;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline std::string rat_to_string(const Rat& x) { return x.get_str(); }

}  // namespace gevrey
