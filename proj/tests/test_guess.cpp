#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gevrey/guess.hpp"
#include "test_util.hpp"

using namespace gevrey;

namespace {

FormalSeries exp_series(std::size_t n) {
    std::vector<Rat> v(n + 1);
    for (std::size_t k = 0; k <= n; ++k) v[k] = make_rat(Int(1), factorial(k));
    return FormalSeries(std::move(v));
}

FormalSeries ones_series(std::size_t n) {
    return FormalSeries(std::vector<Rat>(n + 1, Rat(1)));
}

FormalSeries example33_series(std::size_t n) {
    std::vector<Rat> v(n + 1);
    Int fact(1);
    for (std::size_t k = 0; k <= n; ++k) {
        if (k > 0) fact *= static_cast<unsigned long>(k);
        v[k] = Rat(fact) * Rat(static_cast<long>(k));
    }
    v[0] = 1;
    return FormalSeries(std::move(v));
}

}  // namespace

TEST_CASE("guess_operator recovers defining equations") {
    GuessConfig cfg{1, 0, 40, 8};
    auto op = guess_operator(exp_series(40), cfg);
    REQUIRE(op.has_value());
    CHECK(*op == (DiffOp::d() - DiffOp::identity()).canonical());

    GuessConfig cfg2{1, 1, 40, 8};
    auto geo = guess_operator(ones_series(40), cfg2);
    REQUIRE(geo.has_value());
    DiffOp expected = weyl_multiply(DiffOp::identity() - DiffOp::z(), DiffOp::d()) -
                      DiffOp::identity();
    CHECK(*geo == expected.canonical());
}

TEST_CASE("guess_operator on 1 + sum n*n! z^n finds an order-2 annihilator") {
    FormalSeries f = example33_series(110);
    GuessConfig cfg{2, 3, 104, 6};
    auto op = guess_operator(f, cfg);
    REQUIRE(op.has_value());
    CHECK(op->order() == 2);
    FormalSeries img = apply_op(*op, f);
    CHECK(img.is_zero());
    CHECK(img.order() >= 100);
}

TEST_CASE("guess_operator is scalar stable and rejects short input") {
    FormalSeries f = exp_series(40);
    GuessConfig cfg{1, 1, 40, 8};
    auto a = guess_operator(f, cfg);
    auto b = guess_operator(f * make_rat(Int(-7), Int(3)), cfg);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == *b);

    CHECK_THROWS_AS(guess_operator(exp_series(10), GuessConfig{2, 3, 40, 8}),
                    std::invalid_argument);
    CHECK_THROWS_AS(guess_operator(exp_series(10), GuessConfig{2, 3, 10, 8}),
                    std::invalid_argument);
}

TEST_CASE("guess_operator returns none when nothing fits the bounds") {
    // a lacunary series too wild for order 1, degree 1
    std::vector<Rat> v(41, Rat(0));
    for (std::size_t k = 0; k <= 40; ++k) v[k] = Rat(int_pow(Int(2), k * k % 17));
    auto op = guess_operator(FormalSeries(v), GuessConfig{1, 1, 40, 8});
    CHECK(!op.has_value());
}

TEST_CASE("guessed operators annihilate held-out coefficients") {
    // solve window is shorter than the series: the tail is a free check
    FormalSeries f = example33_series(160);
    GuessConfig cfg{2, 3, 120, 10};
    auto op = guess_operator(f, cfg);
    REQUIRE(op.has_value());
    CHECK(apply_op(*op, f).is_zero());
}

TEST_CASE("hermite_pade satisfies both order and degree conditions") {
    // Z = {1, e^w} at N = 3, D = 1: classic (1,1) pair
    std::vector<FormalSeries> Z = {ones_series(8) - ones_series(8).shift_up().truncated(8),
                                   exp_series(8)};
    // first entry is the constant series 1
    std::vector<Rat> one(9, Rat(0));
    one[0] = 1;
    Z[0] = FormalSeries(one);
    auto polys = hermite_pade(Z, 3, 1);
    REQUIRE(polys.has_value());
    FormalSeries acc = FormalSeries::zero(8);
    for (std::size_t h = 0; h < 2; ++h) {
        std::vector<Rat> pc(9, Rat(0));
        for (long k = 0; k <= (*polys)[h].degree(); ++k)
            pc[static_cast<std::size_t>(k)] = (*polys)[h].coeff(static_cast<std::size_t>(k));
        acc = acc + FormalSeries(pc) * Z[h];
    }
    for (std::size_t n = 0; n < 3; ++n) CHECK(acc.coeff(n) == 0);
    bool nonzero = false;
    for (const auto& p : *polys) nonzero = nonzero || !p.is_zero();
    CHECK(nonzero);

    // Z = {1}, N = 1, D = 0 is unsolvable
    CHECK(!hermite_pade({Z[0]}, 1, 0).has_value());

    CHECK_THROWS_AS(hermite_pade({Z[0], Z[1]}, 10, 2), std::invalid_argument);
}

TEST_CASE("hermite_pade random instances") {
    testutil::Rng rng(314);
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t m = static_cast<std::size_t>(rng.range(2, 3));
        long D = rng.range(2, 5);
        std::size_t N = static_cast<std::size_t>(rng.range(
            static_cast<long>(m) * (D + 1) / 2, static_cast<long>(m) * (D + 1) - 1));
        std::vector<FormalSeries> Z;
        for (std::size_t h = 0; h < m; ++h) {
            std::vector<Rat> v(N + 6);
            for (auto& c : v) c = rng.small_rat();
            Z.emplace_back(std::move(v));
        }
        auto polys = hermite_pade(Z, N, D);
        REQUIRE(polys.has_value());
        bool nonzero = false;
        FormalSeries acc = FormalSeries::zero(N + 5);
        for (std::size_t h = 0; h < m; ++h) {
            CHECK((*polys)[h].degree() <= D);
            nonzero = nonzero || !(*polys)[h].is_zero();
            std::vector<Rat> pc(N + 6, Rat(0));
            for (long k = 0; k <= (*polys)[h].degree(); ++k)
                pc[static_cast<std::size_t>(k)] = (*polys)[h].coeff(static_cast<std::size_t>(k));
            acc = acc + FormalSeries(pc) * Z[h];
        }
        CHECK(nonzero);
        for (std::size_t n = 0; n < N; ++n) CHECK(acc.coeff(n) == 0);
    }
}

TEST_CASE("rational_reconstruct") {
    auto rec = rational_reconstruct(ones_series(24));
    REQUIRE(rec.has_value());
    // 1/(1-z) normalized to a monic denominator: (-1)/(z - 1)
    CHECK(rec->fn.den().degree() == 1);
    CHECK(rec->fn.eval(Rat(0)) == 1);
    REQUIRE(rec->fractions.has_value());
    REQUIRE(rec->fractions->terms().size() == 1);
    CHECK(rec->fractions->terms()[0].pole == 1);

    // sum of two geometric progressions: 1/(1-2z) - 1/(1-3z)
    std::vector<Rat> v(25);
    for (std::size_t n = 0; n <= 24; ++n)
        v[n] = Rat(int_pow(Int(2), n)) - Rat(int_pow(Int(3), n));
    auto rec2 = rational_reconstruct(FormalSeries(v));
    REQUIRE(rec2.has_value());
    CHECK(rec2->fn.den().degree() == 2);
    REQUIRE(rec2->fractions.has_value());
    REQUIRE(rec2->fractions->terms().size() == 2);
    CHECK(rec2->fractions->terms()[0].pole == make_rat(Int(1), Int(3)));
    CHECK(rec2->fractions->terms()[1].pole == make_rat(Int(1), Int(2)));
    // round trip through the series expansion
    CHECK(rec2->fractions->series_at_zero(24) == v);

    // a factorially divergent series never stabilizes
    std::vector<Rat> fact(41);
    for (std::size_t n = 0; n <= 40; ++n) fact[n] = make_rat(Int(1), factorial(n));
    CHECK(!rational_reconstruct(FormalSeries(fact)).has_value());
}
