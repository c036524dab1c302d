#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gevrey/padic.hpp"
#include "gevrey/series.hpp"
#include "test_util.hpp"

using namespace gevrey;

namespace {

std::vector<Rat> ones(std::size_t n) { return std::vector<Rat>(n + 1, Rat(1)); }

// raw coefficients of e^z
std::vector<Rat> exp_raw(std::size_t n) {
    std::vector<Rat> v(n + 1);
    for (std::size_t k = 0; k <= n; ++k) v[k] = make_rat(Int(1), factorial(k));
    return v;
}

}  // namespace

TEST_CASE("borel_normalize strips the factorial weights") {
    GevreySeries expz = GevreySeries::from_raw(Rat(-1), exp_raw(20));
    CHECK(borel_normalize(expz).coeffs() == ones(20));

    std::vector<Rat> raw(21);
    for (std::size_t n = 0; n <= 20; ++n) raw[n] = Rat(factorial(n));
    GevreySeries fact = GevreySeries::from_raw(Rat(1), raw);
    CHECK(borel_normalize(fact).coeffs() == ones(20));

    std::vector<Rat> unit(8, Rat(0));
    unit[0] = 1;
    for (const Rat& s : {Rat(-1), Rat(2), make_rat(Int(1), Int(2))}) {
        GevreySeries one = GevreySeries::from_raw(s, unit);
        auto out = borel_normalize(one).coeffs();
        CHECK(out[0] == 1);
        for (std::size_t n = 1; n < out.size(); ++n) CHECK(out[n] == 0);
    }
    CHECK_THROWS_AS(borel_normalize(GevreySeries(Rat(0), ones(4))), std::invalid_argument);
}

TEST_CASE("laplace_denormalize attaches weights and round-trips") {
    GevreySeries g = laplace_denormalize(FormalSeries(ones(15)), Rat(-1));
    CHECK(g.raw() == exp_raw(15));

    GevreySeries z = laplace_denormalize(FormalSeries::zero(6), Rat(3));
    for (std::size_t n = 0; n <= 6; ++n) CHECK(z.raw_coeff(n) == 0);

    // f = 1 + z at s = 2: weights (0!)^2, (1!)^2 leave it unchanged
    FormalSeries f(std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(laplace_denormalize(f, Rat(2)).raw() == f.coeffs());

    testutil::Rng rng(5);
    for (const Rat& s : {Rat(-1), Rat(1), Rat(-2), make_rat(Int(1), Int(2)),
                         make_rat(Int(-3), Int(2))}) {
        std::vector<Rat> v(30);
        for (auto& c : v) c = rng.small_rat();
        FormalSeries fs(v);
        CHECK(borel_normalize(laplace_denormalize(fs, s)).coeffs() == v);
    }
}

TEST_CASE("divide_linear: pinned example") {
    // F raw = -1 + z, xi = 1: G = 1 since (z-1)*1 = z-1
    GevreySeries F = GevreySeries::from_raw(Rat(-1), {Rat(-1), Rat(1), Rat(0), Rat(0)});
    GevreySeries G = divide_linear(F, Rat(1));
    CHECK(G.raw_coeff(0) == 1);
    for (std::size_t n = 1; n <= 3; ++n) CHECK(G.raw_coeff(n) == 0);
    CHECK_THROWS_AS(divide_linear(F, Rat(0)), std::invalid_argument);
}

TEST_CASE("divide_linear agrees with multiply-back and the displayed recurrence") {
    testutil::Rng rng(77);
    auto run = [&](const Rat& s, std::size_t N, const Rat& xi) {
        std::vector<Rat> a(N + 1);
        for (auto& c : a) c = rng.small_rat();
        GevreySeries F(s, a);
        GevreySeries G = divide_linear(F, xi);

        // oracle 1: (z - xi) * G == F on raw views
        std::vector<Rat> raw_g = G.raw();
        std::vector<Rat> raw_f = F.raw();
        for (std::size_t n = 0; n <= N; ++n) {
            Rat prev = (n == 0) ? Rat(0) : raw_g[n - 1];
            CHECK(prev - xi * raw_g[n] == raw_f[n]);
        }

        // oracle 2: the normalized-coefficient sum b_n = -sum (w_k/w_n) xi^{k-n-1} a_k
        for (std::size_t n = 0; n <= N; ++n) {
            Rat acc(0);
            for (std::size_t k = 0; k <= n; ++k)
                acc -= F.weight(k) / F.weight(n) *
                       rat_pow(xi, static_cast<long>(k) - static_cast<long>(n) - 1) * a[k];
            CHECK(G.normalized()[n] == acc);
        }
    };
    run(Rat(-1), 50, Rat(2));
    run(make_rat(Int(1), Int(2)), 40, Rat(1));
    run(Rat(1), 30, make_rat(Int(-2), Int(3)));
}

TEST_CASE("series arithmetic basics") {
    testutil::Rng rng(3);
    std::vector<Rat> v(20);
    for (auto& c : v) c = rng.small_rat();
    FormalSeries f(v);

    FormalSeries th = f.theta();
    for (std::size_t n = 0; n < 20; ++n) CHECK(th.coeff(n) == Rat(static_cast<long>(n)) * v[n]);

    FormalSeries a(std::vector<Rat>{Rat(1), Rat(1), Rat(0)});
    FormalSeries b(std::vector<Rat>{Rat(1), Rat(-1), Rat(0)});
    FormalSeries prod = a * b;
    CHECK(prod.coeff(0) == 1);
    CHECK(prod.coeff(1) == 0);
    CHECK(prod.coeff(2) == -1);

    // derivative then integrate recovers everything but the constant
    FormalSeries round = f.derivative().integral();
    for (std::size_t n = 1; n < 20; ++n) CHECK(round.coeff(n) == v[n]);
    CHECK(round.coeff(0) == 0);

    // inverse: f * f^{-1} = 1
    std::vector<Rat> u = v;
    u[0] = Rat(1);
    FormalSeries g(u);
    FormalSeries gi = g.inverse();
    FormalSeries check = g * gi;
    CHECK(check.coeff(0) == 1);
    for (std::size_t n = 1; n < 20; ++n) CHECK(check.coeff(n) == 0);
}

TEST_CASE("arith_profile verdicts") {
    std::size_t N = 64;
    GevreySeries all_ones(Rat(1), ones(N));
    auto p1 = arith_profile(all_ones);
    CHECK(p1.consistent_with_G());
    CHECK(p1.max_abs[N] == 1);
    CHECK(p1.den_lcm[N] == 1);

    std::vector<Rat> invfact(N + 1);
    for (std::size_t n = 0; n <= N; ++n) invfact[n] = make_rat(Int(1), factorial(n));
    auto p2 = arith_profile(GevreySeries(Rat(1), invfact));
    CHECK(!p2.den_bounded);
    CHECK(!p2.consistent_with_G());

    std::vector<Rat> pow2(N + 1);
    for (std::size_t n = 0; n <= N; ++n) pow2[n] = Rat(int_pow(Int(2), n));
    auto p3 = arith_profile(GevreySeries(Rat(1), pow2));
    CHECK(p3.conj_bounded);
    CHECK(p3.consistent_with_G());

    // monotonicity of the lcm base
    for (std::size_t n = 1; n <= N; ++n)
        CHECK(mpz_divisible_p(p2.den_lcm[n].get_mpz_t(), p2.den_lcm[n - 1].get_mpz_t()));
}

TEST_CASE("padic_radius_estimate") {
    std::size_t N = 64;
    CHECK(padic_radius_estimate(FormalSeries(ones(N)), Int(3)) == 0);

    // a_n = n!: val_2(a_n)/n has limit 1; at finite N the tail minimum is the
    // digit-sum value at the window start
    std::vector<Rat> fact(N + 1);
    for (std::size_t n = 0; n <= N; ++n) fact[n] = Rat(factorial(n));
    Rat est = padic_radius_estimate(FormalSeries(fact), Int(2));
    Rat expected(1);
    for (std::size_t n = (N + 1) / 2; n <= N; ++n) {
        Rat v = make_rat(Int(legendre_valuation(Int(static_cast<long>(n)), Int(2))),
                         Int(static_cast<long>(n)));
        expected = std::min(expected, v);
    }
    CHECK(est == expected);
    CHECK(est > make_rat(Int(4), Int(5)));
    CHECK(est < 1);

    // a_n = p^n: the statistic is exactly 1 and the cap keeps it there
    std::vector<Rat> p5(N + 1);
    for (std::size_t n = 0; n <= N; ++n) p5[n] = Rat(int_pow(Int(5), n));
    CHECK(padic_radius_estimate(FormalSeries(p5), Int(5)) == 1);

    CHECK_THROWS_AS(padic_radius_estimate(FormalSeries::zero(20), Int(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(padic_radius_estimate(FormalSeries(std::vector<Rat>{Rat(1), Rat(1)}), Int(2)),
                    std::invalid_argument);
}
