#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gevrey/padic.hpp"
#include "gevrey/qarith.hpp"
#include "test_util.hpp"

using namespace gevrey;

namespace {

// independent oracle: count the power of p in n! by literal division
long factorial_valuation_bruteforce(unsigned long n, long p) {
    Int f = factorial(n);
    if (f == 1) return 0;
    return int_valuation(f, Int(p));
}

// digit-sum form of Legendre's identity: (n - S_p(n))/(p-1)
long legendre_digit_sum(long n, long p) {
    long s = 0, m = n;
    while (m > 0) {
        s += m % p;
        m /= p;
    }
    return (n - s) / (p - 1);
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
    testutil::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Rat a = rng.small_rat(1000, 1000);
        Rat b = rng.small_rat(1000, 1000);
        CHECK((a + b) - b == a);
        if (b != 0) CHECK((a * b) / b == a);
    }
}

TEST_CASE("legendre_valuation matches brute force and the digit-sum identity") {
    CHECK(legendre_valuation(Int(0), Int(5)) == 0);
    CHECK(legendre_valuation(Int(9), Int(3)) == factorial_valuation_bruteforce(9, 3));
    CHECK(legendre_valuation(Int(9), Int(3)) == 4);
    CHECK(legendre_valuation(Int(10), Int(2)) == factorial_valuation_bruteforce(10, 2));
    CHECK(legendre_valuation(Int(10), Int(2)) == 8);
    for (long p : {2, 3, 5, 7, 13}) {
        for (long n = 0; n <= 400; n += 7)
            CHECK(legendre_valuation(Int(n), Int(p)) == legendre_digit_sum(n, p));
    }
    CHECK_THROWS_AS(legendre_valuation(Int(4), Int(4)), std::invalid_argument);
    CHECK_THROWS_AS(legendre_valuation(Int(-1), Int(2)), std::invalid_argument);
}

TEST_CASE("q-factorials") {
    QContext q2(Rat(2));
    CHECK(q_factorial(0, q2) == 1);
    CHECK(q_factorial(2, q2) == 3);  // 1 * (1+2)
    QContext qh(make_rat(Int(1), Int(2)));
    CHECK(q_factorial(3, qh) == make_rat(Int(21), Int(8)));  // 1 * 3/2 * 7/4
    CHECK_THROWS_AS(QContext(Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(QContext(Rat(-1)), std::invalid_argument);
    CHECK_THROWS_AS(QContext(Rat(0)), std::invalid_argument);
}

TEST_CASE("q-factorial valuation: examples and brute-force agreement") {
    QContext q2(Rat(2));
    CHECK(q_factorial_valuation(0, q2, Int(7)) == 0);
    // 7 divides 2^m - 1 exactly for m in {3, 6} below 6, once each
    CHECK(q_factorial_valuation(6, q2, Int(7)) == 2);
    QContext q3(Rat(3));
    CHECK(q_factorial_valuation(4, q3, Int(2)) ==
          q_factorial_valuation_bruteforce(4, q3, Int(2)));
    CHECK_THROWS_AS(q_factorial_valuation(3, q2, Int(2)), std::invalid_argument);

    for (const Rat& q : {Rat(2), Rat(3), make_rat(Int(3), Int(5)), make_rat(Int(-7), Int(2))}) {
        QContext ctx(q);
        for (long p : {2L, 3L, 5L, 7L, 11L}) {
            if (rat_valuation(q, Int(p)) != 0) continue;
            for (std::size_t n : {1u, 2u, 17u, 60u, 151u})
                CHECK(q_factorial_valuation(n, ctx, Int(p)) ==
                      q_factorial_valuation_bruteforce(n, ctx, Int(p)));
        }
    }
}

TEST_CASE("q-factorial valuation lower bound when p does not divide q(q-1)") {
    for (const Rat& q : {Rat(2), Rat(3), Rat(10)}) {
        QContext ctx(q);
        for (long p : {2L, 3L, 5L, 7L}) {
            if (rat_valuation(q, Int(p)) != 0) continue;
            if (q != 1 && rat_valuation(q - 1, Int(p)) != 0) continue;
            for (std::size_t n = 0; n <= 300; n += 13)
                CHECK(q_factorial_valuation(n, ctx, Int(p)) >=
                      static_cast<long>(n) / (p - 1));
        }
    }
}

TEST_CASE("p-adic values: construction and residues") {
    PAdicValue v(Int(7), 10, Rat(-1));
    CHECK(v.valuation() == 0);
    CHECK(v.residue_mod(10) == int_pow(Int(7), 10) - 1);

    PAdicValue w(Int(5), 6, make_rat(Int(50), Int(3)));  // 50/3 = 5^2 * (2/3)
    CHECK(w.valuation() == 2);
    CHECK(w.congruent(make_rat(Int(50), Int(3))));
    CHECK(!w.congruent(make_rat(Int(51), Int(3))));

    PAdicValue z = PAdicValue::exact_zero(Int(5), 6);
    CHECK(z.is_exact_zero());
    CHECK(z.congruent(Rat(0)));
}

TEST_CASE("p-adic multiplication adds valuations; addition is ultrametric") {
    testutil::Rng rng(23);
    Int p(5);
    for (int i = 0; i < 100; ++i) {
        Rat a = rng.nonzero_rat(2000, 50);
        Rat b = rng.nonzero_rat(2000, 50);
        if (rat_valuation(a, p) < -8 || rat_valuation(b, p) < -8) continue;
        PAdicValue x(p, 20, a), y(p, 20, b);
        PAdicValue prod = x * y;
        CHECK(prod.valuation() == x.valuation() + y.valuation());
        if (a + b != 0) {
            PAdicValue sum = x + y;
            CHECK(sum.valuation() >= std::min(x.valuation(), y.valuation()));
            if (x.valuation() != y.valuation())
                CHECK(sum.valuation() == std::min(x.valuation(), y.valuation()));
            CHECK(sum.congruent(a + b));
        }
    }
}

TEST_CASE("p-adic truncation is consistent") {
    PAdicValue v(Int(3), 30, make_rat(Int(1234567), Int(8)));
    PAdicValue t = v.truncated(12);
    CHECK(t.precision() == 12);
    CHECK(t.valuation() == v.valuation());
    CHECK(v.unit_residue() % int_pow(Int(3), 12) == t.unit_residue());
}
