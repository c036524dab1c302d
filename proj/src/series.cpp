#include "gevrey/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gevrey {

Int factorial(std::size_t n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

FormalSeries::FormalSeries(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("FormalSeries: empty coefficient list");
}

FormalSeries FormalSeries::zero(std::size_t order) {
    return FormalSeries(std::vector<Rat>(order + 1, Rat(0)));
}

const Rat& FormalSeries::coeff(std::size_t n) const {
    if (n >= coeffs_.size()) throw std::out_of_range("FormalSeries: coefficient beyond truncation");
    return coeffs_[n];
}

bool FormalSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
}

FormalSeries FormalSeries::truncated(std::size_t order) const {
    if (order >= coeffs_.size()) throw std::out_of_range("FormalSeries: truncation too long");
    return FormalSeries(std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
    std::size_t n = std::min(order(), o.order());
    std::vector<Rat> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = coeffs_[i] + o.coeffs_[i];
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const {
    std::size_t n = std::min(order(), o.order());
    std::vector<Rat> v(n + 1);
    for (std::size_t i = 0; i <= n; ++i) v[i] = coeffs_[i] - o.coeffs_[i];
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::operator*(const FormalSeries& o) const {
    std::size_t n = std::min(order(), o.order());
    std::vector<Rat> v(n + 1, Rat(0));
    for (std::size_t i = 0; i <= n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::operator*(const Rat& c) const {
    std::vector<Rat> v = coeffs_;
    for (auto& x : v) x *= c;
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::operator-() const {
    std::vector<Rat> v = coeffs_;
    for (auto& x : v) x = -x;
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::derivative() const {
    if (order() == 0) return FormalSeries(std::vector<Rat>{Rat(0)});
    std::vector<Rat> v(coeffs_.size() - 1);
    for (std::size_t n = 1; n < coeffs_.size(); ++n)
        v[n - 1] = coeffs_[n] * Rat(static_cast<long>(n));
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::theta() const {
    std::vector<Rat> v = coeffs_;
    for (std::size_t n = 0; n < v.size(); ++n) v[n] *= Rat(static_cast<long>(n));
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::integral() const {
    std::vector<Rat> v(coeffs_.size() + 1, Rat(0));
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
        v[n + 1] = coeffs_[n] / Rat(static_cast<long>(n + 1));
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::shift_up(std::size_t k) const {
    std::vector<Rat> v(coeffs_.size() + k, Rat(0));
    for (std::size_t n = 0; n < coeffs_.size(); ++n) v[n + k] = coeffs_[n];
    return FormalSeries(std::move(v));
}

FormalSeries FormalSeries::inverse() const {
    if (coeffs_[0] == 0) throw std::domain_error("FormalSeries::inverse: constant term is zero");
    std::vector<Rat> b(coeffs_.size(), Rat(0));
    Rat inv0 = 1 / coeffs_[0];
    b[0] = inv0;
    for (std::size_t n = 1; n < coeffs_.size(); ++n) {
        Rat acc(0);
        for (std::size_t k = 1; k <= n; ++k) acc += coeffs_[k] * b[n - k];
        b[n] = -inv0 * acc;
    }
    return FormalSeries(std::move(b));
}

bool FormalSeries::agrees_with(const FormalSeries& o, std::size_t through_order) const {
    if (order() < through_order || o.order() < through_order) return false;
    for (std::size_t n = 0; n <= through_order; ++n)
        if (coeffs_[n] != o.coeffs_[n]) return false;
    return true;
}

std::string FormalSeries::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        if (coeffs_[n] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs_[n].get_str() << ")";
        if (n >= 1) os << "*" << var;
        if (n >= 2) os << "^" << n;
    }
    if (first) os << "0";
    os << " + O(" << var << "^" << coeffs_.size() << ")";
    return os.str();
}

GevreySeries::GevreySeries(Rat order_s, std::vector<Rat> normalized)
    : s_(std::move(order_s)), normalized_(std::move(normalized)) {
    if (normalized_.empty()) throw std::invalid_argument("GevreySeries: empty coefficient list");
    if (!s_.get_num().fits_slong_p() || !s_.get_den().fits_slong_p())
        throw std::invalid_argument("GevreySeries: unreasonable Gevrey order");
    wp_ = s_.get_num().get_si();
    wq_ = s_.get_den().get_si();
}

Rat GevreySeries::weight(std::size_t n) const {
    if (wp_ == 0) return Rat(1);
    Int f = factorial(n / static_cast<std::size_t>(wq_));
    Rat w(f);
    return rat_pow(w, wp_);
}

GevreySeries GevreySeries::from_raw(const Rat& order_s, const std::vector<Rat>& raw) {
    GevreySeries shell(order_s, std::vector<Rat>(raw.size(), Rat(0)));
    std::vector<Rat> normalized(raw.size());
    for (std::size_t n = 0; n < raw.size(); ++n) normalized[n] = raw[n] / shell.weight(n);
    return GevreySeries(order_s, std::move(normalized));
}

Rat GevreySeries::raw_coeff(std::size_t n) const {
    if (n >= normalized_.size()) throw std::out_of_range("GevreySeries: beyond truncation");
    return normalized_[n] * weight(n);
}

std::vector<Rat> GevreySeries::raw() const {
    std::vector<Rat> v(normalized_.size());
    for (std::size_t n = 0; n < v.size(); ++n) v[n] = raw_coeff(n);
    return v;
}

FormalSeries borel_normalize(const GevreySeries& F) {
    if (F.gevrey_order() == 0)
        throw std::invalid_argument("borel_normalize: order 0 has no associated series");
    return FormalSeries(F.normalized());
}

GevreySeries laplace_denormalize(const FormalSeries& f, const Rat& s) {
    return GevreySeries(s, f.coeffs());
}

GevreySeries divide_linear(const GevreySeries& F, const Rat& xi) {
    if (xi == 0) throw std::invalid_argument("divide_linear: xi must be nonzero");
    std::vector<Rat> raw = F.raw();
    std::vector<Rat> g(raw.size());
    // (z - xi) G = F coefficientwise: g_{n-1} - xi g_n = f_n
    Rat prev(0);
    for (std::size_t n = 0; n < raw.size(); ++n) {
        g[n] = (prev - raw[n]) / xi;
        prev = g[n];
    }
    return GevreySeries::from_raw(F.gevrey_order(), g);
}

namespace {

// log2 of a positive rational to within one bit, as an exact integer.
long approx_log2(const Rat& x) {
    long nb = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2));
    long db = static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
    return nb - db;
}

// Bounded-window heuristic: the root statistic over the later window may
// not exceed the earlier window by more than half a bit.
bool window_bounded(const std::vector<Rat>& stat) {
    std::size_t n = stat.size() - 1;
    if (n < 8) return true;
    Rat early(-1000000), late(-1000000);
    for (std::size_t k = n / 4; k <= n / 2; ++k) early = std::max(early, stat[k]);
    for (std::size_t k = n / 2 + 1; k <= n; ++k) late = std::max(late, stat[k]);
    return late <= early + make_rat(1, 2);
}

}  // namespace

ArithProfile arith_profile(const GevreySeries& F) {
    const auto& a = F.normalized();
    ArithProfile prof;
    prof.max_abs.resize(a.size());
    prof.den_lcm.resize(a.size());
    prof.conj_root_log2.assign(a.size(), Rat(0));
    prof.den_root_log2.assign(a.size(), Rat(0));
    Rat mx(0);
    Int lcm(1);
    for (std::size_t n = 0; n < a.size(); ++n) {
        mx = std::max(mx, rat_abs(a[n]));
        Int d = a[n].get_den();
        lcm = lcm / gcd(lcm, d) * d;
        prof.max_abs[n] = mx;
        prof.den_lcm[n] = lcm;
        if (n >= 1) {
            if (mx != 0) prof.conj_root_log2[n] = make_rat(Int(approx_log2(mx)), Int(static_cast<long>(n)));
            prof.den_root_log2[n] =
                make_rat(Int(static_cast<long>(mpz_sizeinbase(lcm.get_mpz_t(), 2)) - 1),
                         Int(static_cast<long>(n)));
        }
    }
    prof.conj_bounded = window_bounded(prof.conj_root_log2);
    prof.den_bounded = window_bounded(prof.den_root_log2);
    return prof;
}

Rat padic_radius_estimate(const FormalSeries& f, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("padic_radius_estimate: p is not prime");
    std::size_t nonzero = 0;
    for (const auto& c : f.coeffs())
        if (c != 0) ++nonzero;
    if (nonzero == 0) throw std::invalid_argument("padic_radius_estimate: zero series");
    if (nonzero < 8) throw std::invalid_argument("padic_radius_estimate: need at least 8 nonzero coefficients");

    std::size_t N = f.order();
    bool found = false;
    Rat best(0);
    auto scan = [&](std::size_t lo) {
        for (std::size_t n = std::max<std::size_t>(lo, 1); n <= N; ++n) {
            if (f.coeff(n) == 0) continue;
            Rat v = make_rat(Int(rat_valuation(f.coeff(n), p)), Int(static_cast<long>(n)));
            if (!found || v < best) best = v;
            found = true;
        }
    };
    scan((N + 1) / 2);
    if (!found) scan(1);
    if (!found) throw std::invalid_argument("padic_radius_estimate: no usable coefficients");
    return std::min(best, Rat(1));
}

}  // namespace gevrey
