#include "gevrey/factorial_sum.hpp"

#include <stdexcept>

#include "gevrey/guess.hpp"

namespace gevrey {

TelescopeResult telescope_decompose(const Poly& P) {
    // Peel the unique Q coefficientwise: (n+1)Q(n+1) - Q(n) raises the degree
    // by one with the same leading coefficient, so matching top terms is a
    // triangular solve.
    Poly x = Poly::variable();
    Poly rem = P;
    Poly Q;
    while (rem.degree() >= 1) {
        std::size_t k = static_cast<std::size_t>(rem.degree());
        Rat top = rem.leading();
        Poly qterm = Poly::monomial(k - 1, top);
        Q = Q + qterm;
        // subtract (n+1) qterm(n+1) - qterm(n)
        Poly image = (x + Poly(Rat(1))) * qterm.shifted(Rat(1)) - qterm;
        rem = rem - image;
    }
    TelescopeResult res;
    res.Q = Q;
    res.residual_c = rem.is_zero() ? Rat(0) : rem.coeff(0);
    if (res.residual_c == 0) res.universal_value = -Q.eval(Rat(0));
    return res;
}

PAdicValue padic_sum(const FactorialSeriesSpec& spec, const Int& p, long precision) {
    if (!is_prime(p)) throw std::invalid_argument("padic_sum: p is not prime");
    if (precision < 1) throw std::invalid_argument("padic_sum: precision must be >= 1");
    if (spec.weight_exponent < 1)
        throw std::invalid_argument("padic_sum: weight exponent must be >= 1");
    if (spec.P.is_zero()) return PAdicValue::exact_zero(p, precision);
    long vxi = (spec.xi == 0) ? 0 : rat_valuation(spec.xi, p);
    if (spec.xi != 0 && vxi < 0)
        throw std::invalid_argument("padic_sum: series diverges p-adically (val_p(xi) < 0)");

    // valuation slack of P(n) over integer n: at least the min coefficient valuation
    long slack = 0;
    for (std::size_t k = 0; k < spec.P.coeffs().size(); ++k)
        if (spec.P.coeff(k) != 0) slack = std::min(slack, rat_valuation(spec.P.coeff(k), p));

    // first N with s val_p(N!) + N val_p(xi) + slack >= precision; the bound
    // is nondecreasing in N, so all later terms are negligible too
    std::size_t N = 0;
    while (spec.weight_exponent * legendre_valuation(Int(static_cast<unsigned long>(N)), p) +
               static_cast<long>(N) * vxi + slack <
           precision)
        ++N;

    Rat sum(0);
    Int fact(1);
    Rat xpow(1);
    for (std::size_t n = 0; n < N; ++n) {
        if (n > 0) fact *= static_cast<unsigned long>(n);
        Rat weight(fact);
        sum += spec.P.eval(Rat(static_cast<long>(n))) *
               rat_pow(weight, spec.weight_exponent) * xpow;
        xpow *= spec.xi;
    }

    if (sum == 0) return PAdicValue::from_parts(p, 0, precision, Int(0));  // 0 + O(p^k)
    long v = rat_valuation(sum, p);
    if (v >= precision) return PAdicValue::from_parts(p, 0, precision, Int(0));
    // unit of the partial sum, certified only to precision - v digits
    Int mod = int_pow(p, static_cast<unsigned long>(precision - v));
    Int num = sum.get_num(), den = sum.get_den();
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    Int den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("padic_sum: denominator not invertible");
    Int unit = num * den_inv % mod;
    if (unit < 0) unit += mod;
    return PAdicValue::from_parts(p, precision - v, v, unit);
}

UniversalReport verify_universal(const FactorialSeriesSpec& spec, const std::vector<Int>& primes,
                                 long precision) {
    if (spec.weight_exponent != 1 || spec.xi != 1)
        throw std::invalid_argument("verify_universal: telescoping needs s = 1, xi = 1");
    UniversalReport rep;
    rep.telescope = telescope_decompose(spec.P);
    rep.all_match = rep.telescope.universal_value.has_value();
    for (const Int& p : primes) {
        UniversalCheck chk{p, padic_sum(spec, p, precision), false};
        if (rep.telescope.universal_value)
            chk.matches_universal = chk.value.congruent(*rep.telescope.universal_value);
        rep.all_match = rep.all_match && chk.matches_universal;
        rep.checks.push_back(std::move(chk));
    }
    return rep;
}

PipelineReport example33_pipeline(std::size_t truncation) {
    GuessConfig cfg;
    cfg.max_order = 2;
    cfg.max_degree = 3;
    cfg.margin = 20;
    cfg.truncation = truncation > cfg.margin ? truncation - 1 : 0;
    std::size_t needed =
        static_cast<std::size_t>((cfg.max_order + 1) * (cfg.max_degree + 1)) + cfg.margin;
    if (cfg.truncation < needed)
        throw std::invalid_argument("example33_pipeline: insufficient coefficients");

    // f = 1 + sum n * n! z^n
    std::vector<Rat> coeffs(truncation + 1);
    Int fact(1);
    for (std::size_t n = 0; n <= truncation; ++n) {
        if (n > 0) fact *= static_cast<unsigned long>(n);
        coeffs[n] = Rat(fact) * Rat(static_cast<long>(n));
    }
    coeffs[0] = 1;
    FormalSeries f(std::move(coeffs));

    PipelineReport rep;
    auto op = guess_operator(f, cfg);
    if (!op) {
        rep.verdict = Verdict::Fail;
        return rep;
    }
    rep.annihilator = *op;
    rep.triviality = trivial_singularity_check(*op, Rat(1), 1);
    rep.verdict = rep.triviality.verdict;
    return rep;
}

}  // namespace gevrey
