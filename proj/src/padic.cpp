#include "gevrey/padic.hpp"

#include <sstream>

namespace gevrey {

long legendre_valuation(const Int& n, const Int& p) {
    if (n < 0) throw std::invalid_argument("legendre_valuation: n must be >= 0");
    if (!is_prime(p)) throw std::invalid_argument("legendre_valuation: p is not prime");
    long total = 0;
    Int q = n / p;
    while (q > 0) {
        if (!q.fits_slong_p()) throw std::overflow_error("legendre_valuation: overflow");
        total += q.get_si();
        q /= p;
    }
    return total;
}

PAdicValue PAdicValue::exact_zero(Int prime, long precision) {
    PAdicValue v;
    v.prime_ = std::move(prime);
    v.precision_ = precision;
    v.exact_zero_ = true;
    v.unit_ = 0;
    return v;
}

PAdicValue PAdicValue::from_parts(Int prime, long precision, long valuation, Int unit) {
    PAdicValue v;
    v.prime_ = std::move(prime);
    v.precision_ = precision;
    v.valuation_ = valuation;
    v.unit_ = std::move(unit);
    v.normalize();
    return v;
}

PAdicValue::PAdicValue(Int prime, long precision, const Rat& value) {
    if (!is_prime(prime)) throw std::invalid_argument("PAdicValue: p is not prime");
    if (precision < 1) throw std::invalid_argument("PAdicValue: precision must be >= 1");
    prime_ = std::move(prime);
    precision_ = precision;
    if (value == 0) {
        exact_zero_ = true;
        unit_ = 0;
        return;
    }
    valuation_ = rat_valuation(value, prime_);
    // unit = value / p^valuation, an element of Z_p^*; reduce mod p^precision.
    Int num = value.get_num(), den = value.get_den();
    Int dummy;
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), prime_.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), prime_.get_mpz_t());
    Int mod = int_pow(prime_, static_cast<unsigned long>(precision_));
    Int den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("PAdicValue: denominator not invertible");
    unit_ = (num * den_inv) % mod;
    if (unit_ < 0) unit_ += mod;
    (void)dummy;
}

void PAdicValue::normalize() {
    if (exact_zero_) return;
    Int mod = int_pow(prime_, static_cast<unsigned long>(precision_ < 0 ? 0 : precision_));
    if (precision_ <= 0) {
        // nothing is known about the unit
        unit_ = 0;
        return;
    }
    unit_ %= mod;
    if (unit_ < 0) unit_ += mod;
    // Shift p-factors of the residue into the valuation, losing digits of
    // precision as the ultrametric demands.
    while (precision_ > 0 && unit_ != 0 && mpz_divisible_p(unit_.get_mpz_t(), prime_.get_mpz_t())) {
        unit_ /= prime_;
        valuation_ += 1;
        precision_ -= 1;
    }
    if (unit_ == 0) {
        // zero to the working precision: record "0 + O(p^(val+prec))"
        valuation_ += precision_;
        precision_ = 0;
    }
}

long PAdicValue::valuation() const {
    if (exact_zero_) throw std::domain_error("PAdicValue: exact zero has no finite valuation");
    return valuation_;
}

Int PAdicValue::residue_mod(long k) const {
    if (k < 0) throw std::invalid_argument("residue_mod: negative modulus exponent");
    Int mod = int_pow(prime_, static_cast<unsigned long>(k));
    if (exact_zero_) return 0;
    if (valuation_ < 0) throw std::domain_error("residue_mod: negative valuation");
    if (valuation_ + precision_ < k)
        throw std::domain_error("residue_mod: not enough precision");
    Int r = (unit_ * int_pow(prime_, static_cast<unsigned long>(valuation_))) % mod;
    if (r < 0) r += mod;
    return r;
}

PAdicValue PAdicValue::operator+(const PAdicValue& o) const {
    if (prime_ != o.prime_) throw std::invalid_argument("PAdicValue: mixed primes");
    if (exact_zero_) return o;
    if (o.exact_zero_) return *this;
    // absolute precision = how far the expansion is known
    long abs_prec = std::min(valuation_ + precision_, o.valuation_ + o.precision_);
    long v = std::min(valuation_, o.valuation_);
    long digits = abs_prec - v;
    if (digits <= 0) {
        PAdicValue r;
        r.prime_ = prime_;
        r.valuation_ = abs_prec;
        r.precision_ = 0;
        r.unit_ = 0;
        return r;
    }
    Int mod = int_pow(prime_, static_cast<unsigned long>(digits));
    Int a = (unit_ * int_pow(prime_, static_cast<unsigned long>(valuation_ - v))) % mod;
    Int b = (o.unit_ * int_pow(prime_, static_cast<unsigned long>(o.valuation_ - v))) % mod;
    PAdicValue r;
    r.prime_ = prime_;
    r.valuation_ = v;
    r.precision_ = digits;
    r.unit_ = (a + b) % mod;
    r.normalize();
    return r;
}

PAdicValue PAdicValue::operator-(const PAdicValue& o) const {
    PAdicValue neg = o;
    if (!neg.exact_zero_) {
        Int mod = int_pow(neg.prime_, static_cast<unsigned long>(neg.precision_));
        if (neg.precision_ > 0) neg.unit_ = (mod - neg.unit_) % mod;
    }
    return *this + neg;
}

PAdicValue PAdicValue::operator*(const PAdicValue& o) const {
    if (prime_ != o.prime_) throw std::invalid_argument("PAdicValue: mixed primes");
    if (exact_zero_ || o.exact_zero_) return exact_zero(prime_, std::max(precision_, o.precision_));
    PAdicValue r;
    r.prime_ = prime_;
    r.valuation_ = valuation_ + o.valuation_;
    r.precision_ = std::min(precision_, o.precision_);
    if (r.precision_ <= 0) {
        r.precision_ = 0;
        r.unit_ = 0;
        return r;
    }
    Int mod = int_pow(prime_, static_cast<unsigned long>(r.precision_));
    r.unit_ = (unit_ * o.unit_) % mod;
    r.normalize();
    return r;
}

PAdicValue PAdicValue::truncated(long precision) const {
    if (exact_zero_) return exact_zero(prime_, precision);
    if (precision >= precision_) return *this;
    PAdicValue r = *this;
    r.precision_ = precision;
    r.normalize();
    return r;
}

// True iff val_p(this - x) >= valuation + precision, i.e. x is a valid
// representative of this value at its absolute precision.
bool PAdicValue::congruent(const Rat& x) const {
    if (exact_zero_) return x == 0;
    if (x == 0) return precision_ == 0;
    if (precision_ == 0) return rat_valuation(x, prime_) >= valuation_;
    long vx = rat_valuation(x, prime_);
    if (vx < valuation_) return false;
    Int mod = int_pow(prime_, static_cast<unsigned long>(precision_));
    Int num = x.get_num(), den = x.get_den();
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), prime_.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), prime_.get_mpz_t());
    Int den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("congruent: denominator not invertible");
    // x / p^valuation_ mod p^precision_
    Int scaled = num * den_inv % mod;
    scaled = scaled * int_pow(prime_, static_cast<unsigned long>(vx - valuation_)) % mod;
    Int diff = (scaled - unit_) % mod;
    return diff == 0;
}

std::string PAdicValue::to_string() const {
    std::ostringstream os;
    if (exact_zero_) {
        os << "0 (exact, " << prime_ << "-adic)";
        return os.str();
    }
    os << prime_ << "^" << valuation_ << " * (" << unit_ << " + O(" << prime_ << "^" << precision_
       << "))";
    return os.str();
}

}  // namespace gevrey
