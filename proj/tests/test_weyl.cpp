#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gevrey/linalg.hpp"
#include "gevrey/weyl.hpp"
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

DiffOp random_op(testutil::Rng& rng, long max_deg, long max_ord) {
    DiffOp a;
    while (a.is_zero()) {
        for (long i = 0; i <= max_deg; ++i)
            for (long j = 0; j <= max_ord; ++j)
                if (rng.range(0, 2) == 0) a = a + DiffOp::monomial(i, j, rng.small_rat(4, 3));
    }
    return a;
}

// Basis of truncated series (to order M) annihilated by A, built directly
// from apply_op on coordinate vectors; independent of the recurrence path.
std::vector<std::vector<Rat>> truncated_kernel(const DiffOp& a, std::size_t M) {
    QMatrix rows;
    std::size_t out_len = 0;
    for (std::size_t c = 0; c <= M; ++c) {
        std::vector<Rat> unit(M + 1, Rat(0));
        unit[c] = 1;
        FormalSeries img = apply_op(a, FormalSeries(unit));
        out_len = img.order() + 1;
        if (rows.empty()) rows.assign(out_len, std::vector<Rat>(M + 1, Rat(0)));
        for (std::size_t r = 0; r < out_len; ++r) rows[r][c] = img.coeff(r);
    }
    return kernel_basis(std::move(rows), M + 1);
}

bool annihilates(const DiffOp& a, const std::vector<Rat>& coeffs) {
    return apply_op(a, FormalSeries(coeffs)).is_zero();
}

}  // namespace

TEST_CASE("weyl product: defining relation and monomial expansions") {
    CHECK(weyl_multiply(DiffOp::d(), DiffOp::z()) ==
          DiffOp::theta() + DiffOp::identity());
    CHECK(weyl_multiply(DiffOp::theta(), DiffOp::theta()) ==
          DiffOp::monomial(2, 2, Rat(1)) + DiffOp::theta());
    testutil::Rng rng(1);
    DiffOp a = random_op(rng, 2, 2);
    CHECK(weyl_multiply(a, DiffOp::identity()) == a);
    CHECK(weyl_multiply(DiffOp::identity(), a) == a);
}

TEST_CASE("weyl product is associative and distributive") {
    testutil::Rng rng(42);
    for (int rep = 0; rep < 30; ++rep) {
        DiffOp a = random_op(rng, 2, 2);
        DiffOp b = random_op(rng, 2, 2);
        DiffOp c = random_op(rng, 2, 2);
        CHECK(weyl_multiply(weyl_multiply(a, b), c) == weyl_multiply(a, weyl_multiply(b, c)));
        CHECK(weyl_multiply(a, b + c) == weyl_multiply(a, b) + weyl_multiply(a, c));
    }
}

TEST_CASE("apply_op: defining equations and composition") {
    DiffOp d_minus_1 = DiffOp::d() - DiffOp::identity();
    CHECK(apply_op(d_minus_1, exp_series(30)).is_zero());

    DiffOp geo = weyl_multiply(DiffOp::identity() - DiffOp::z(), DiffOp::d()) - DiffOp::identity();
    CHECK(apply_op(geo, ones_series(30)).is_zero());

    testutil::Rng rng(9);
    std::vector<Rat> v(25);
    for (auto& c : v) c = rng.small_rat();
    FormalSeries f(v);
    FormalSeries th = apply_op(DiffOp::theta(), f);
    for (std::size_t n = 0; n <= th.order(); ++n)
        CHECK(th.coeff(n) == Rat(static_cast<long>(n)) * v[n]);

    for (int rep = 0; rep < 20; ++rep) {
        DiffOp a = random_op(rng, 2, 2);
        DiffOp b = random_op(rng, 2, 2);
        FormalSeries lhs = apply_op(weyl_multiply(a, b), f);
        FormalSeries rhs = apply_op(a, apply_op(b, f));
        CHECK(lhs.agrees_with(rhs, std::min(lhs.order(), rhs.order())));
    }

    CHECK_THROWS_AS(apply_op(DiffOp::monomial(0, 5, Rat(1)),
                             FormalSeries(std::vector<Rat>{Rat(1), Rat(1)})),
                    std::invalid_argument);
}

TEST_CASE("op_to_recurrence: dictionary examples") {
    // d - 1: (n+1) u_{n+1} - u_n = 0
    Recurrence r1 = op_to_recurrence(DiffOp::d() - DiffOp::identity());
    REQUIRE(r1.span() == 1);
    CHECK(r1.offset == 0);
    CHECK(r1.r[0] == Poly(Rat(-1)));
    CHECK(r1.r[1] == Poly(std::vector<Rat>{Rat(1), Rat(1)}));

    // (1-z) d - 1: (n+1) u_{n+1} - (n+1) u_n = 0
    DiffOp geo = weyl_multiply(DiffOp::identity() - DiffOp::z(), DiffOp::d()) - DiffOp::identity();
    Recurrence r2 = op_to_recurrence(geo);
    REQUIRE(r2.span() == 1);
    CHECK(r2.r[0] == Poly(std::vector<Rat>{Rat(-1), Rat(-1)}));
    CHECK(r2.r[1] == Poly(std::vector<Rat>{Rat(1), Rat(1)}));

    // z d: n u_n = 0
    Recurrence r3 = op_to_recurrence(DiffOp::theta());
    REQUIRE(r3.span() == 0);
    CHECK(r3.r[0] == Poly(std::vector<Rat>{Rat(0), Rat(1)}));

    CHECK_THROWS_AS(op_to_recurrence(DiffOp::zero()), std::invalid_argument);
}

TEST_CASE("recurrence round trip preserves the solution space") {
    testutil::Rng rng(1234);
    std::vector<DiffOp> ops = {
        DiffOp::d() - DiffOp::identity(),
        weyl_multiply(DiffOp::identity() - DiffOp::z(), DiffOp::d()) - DiffOp::identity(),
        weyl_multiply(DiffOp::d(), DiffOp::d()) - DiffOp::d(),
        DiffOp::theta() - DiffOp::monomial(0, 0, Rat(3)),
        DiffOp::monomial(2, 1, Rat(1)) + DiffOp::z() - DiffOp::identity(),
    };
    for (int rep = 0; rep < 12; ++rep) ops.push_back(random_op(rng, 2, 2));

    std::size_t M = 24;
    int checked = 0;
    for (const auto& a : ops) {
        DiffOp b = recurrence_to_op(op_to_recurrence(a));
        auto ka = truncated_kernel(a, M);
        auto kb = truncated_kernel(b, M);
        CHECK(ka.size() == kb.size());
        for (const auto& v : ka) {
            CHECK(annihilates(b, v));
            ++checked;
        }
        for (const auto& v : kb) CHECK(annihilates(a, v));
        // a non-solution must stay a non-solution
        std::vector<Rat> junk(M + 1);
        for (auto& c : junk) c = rng.small_rat();
        if (!annihilates(a, junk)) CHECK(!annihilates(b, junk));
    }
    CHECK(checked >= 10);
}

TEST_CASE("borel_transfer: exponential to geometric and back") {
    DiffOp d_minus_1 = DiffOp::d() - DiffOp::identity();
    DiffOp t = borel_transfer(d_minus_1, -1);
    CHECK(apply_op(t, ones_series(100)).is_zero());
    // the recurrence of the transfer has the solution space of a_{n+1} = a_n
    std::vector<Rat> notones(30, Rat(1));
    notones[7] = 2;
    CHECK(!apply_op(t, FormalSeries(notones)).is_zero());

    DiffOp back = borel_transfer(t, 1);
    CHECK(apply_op(back, exp_series(60)).is_zero());
    std::vector<Rat> junk = exp_series(40).coeffs();
    junk[11] += 1;
    CHECK(!apply_op(back, FormalSeries(junk)).is_zero());

    CHECK_THROWS_AS(borel_transfer(d_minus_1, 0), std::invalid_argument);
    CHECK(borel_transfer(DiffOp::identity(), -1) == DiffOp::identity());
}

TEST_CASE("laplace dictionary: F = (z-1)G translates to f = (z^2 D + z - 1) g") {
    testutil::Rng rng(2024);
    DiffOp dict = DiffOp::monomial(2, 1, Rat(1)) + DiffOp::z() - DiffOp::identity();
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t N = 60;
        std::vector<Rat> b(N + 1);
        for (auto& c : b) c = rng.small_rat();
        GevreySeries G(Rat(-1), b);
        // F = (z - 1) G on raw views
        std::vector<Rat> raw_g = G.raw();
        std::vector<Rat> raw_f(N + 1);
        for (std::size_t n = 0; n <= N; ++n)
            raw_f[n] = (n == 0 ? Rat(0) : raw_g[n - 1]) - raw_g[n];
        GevreySeries F = GevreySeries::from_raw(Rat(-1), raw_f);

        FormalSeries f = borel_normalize(F);
        FormalSeries g = borel_normalize(G);
        FormalSeries rhs = apply_op(dict, g);
        CHECK(rhs.agrees_with(f, rhs.order()));
    }
}

TEST_CASE("indicial data") {
    DiffOp euler2 = weyl_multiply(DiffOp::theta(), DiffOp::theta() - DiffOp::identity());
    IndicialData e = indicial_polynomial(euler2, Rat(0));
    REQUIRE(e.exponents.size() == 2);
    CHECK(e.exponents[0].first == 0);
    CHECK(e.exponents[1].first == 1);
    CHECK(e.roots_complete);

    IndicialData o = indicial_polynomial(DiffOp::d() - DiffOp::identity(), Rat(1));
    REQUIRE(o.exponents.size() == 1);
    CHECK(o.exponents[0].first == 0);
    CHECK(o.indicial.degree() == 1);

    // (z-1) d - c at 1: single exponent c
    Rat c = make_rat(Int(5), Int(3));
    DiffOp a = weyl_multiply(DiffOp::z() - DiffOp::identity(), DiffOp::d()) -
               DiffOp::monomial(0, 0, c);
    IndicialData i = indicial_polynomial(a, Rat(1));
    REQUIRE(i.exponents.size() == 1);
    CHECK(i.exponents[0].first == c);
}

TEST_CASE("singular points") {
    DiffOp geo = weyl_multiply(DiffOp::identity() - DiffOp::z(), DiffOp::d()) - DiffOp::identity();
    SingularPoints s1 = singular_points(geo);
    REQUIRE(s1.points.size() == 1);
    CHECK(s1.points[0].first == 1);

    SingularPoints s2 = singular_points(DiffOp::d() - DiffOp::identity());
    CHECK(s2.points.empty());
    CHECK(s2.roots_complete);

    DiffOp irr = DiffOp::monomial(2, 1, Rat(1)) + DiffOp::z() - DiffOp::identity();
    SingularPoints s3 = singular_points(irr);
    REQUIRE(s3.points.size() == 1);
    CHECK(s3.points[0].first == 0);
    CHECK(s3.points[0].second == 2);
}

TEST_CASE("newton polygons at 0 and infinity") {
    NewtonPolygon p1 = newton_polygon(DiffOp::theta(), PolygonLocation::Origin);
    CHECK(p1.regular_singular());
    CHECK(p1.slope_set() == std::vector<Rat>{Rat(0)});

    DiffOp irr = DiffOp::monomial(2, 1, Rat(1)) + DiffOp::z() - DiffOp::identity();
    NewtonPolygon p2 = newton_polygon(irr, PolygonLocation::Origin);
    CHECK(!p2.regular_singular());
    bool has_one = false;
    for (const auto& [s, l] : p2.slopes) has_one = has_one || s == 1;
    CHECK(has_one);

    NewtonPolygon p3 = newton_polygon(DiffOp::d() - DiffOp::identity(), PolygonLocation::Infinity);
    bool slope1 = false;
    for (const auto& [s, l] : p3.slopes) slope1 = slope1 || s == 1;
    CHECK(slope1);

    NewtonPolygon p4 = newton_polygon(DiffOp::theta(), PolygonLocation::Infinity);
    CHECK(p4.regular_singular());
}

TEST_CASE("trivial singularity check") {
    DiffOp d_minus_1 = DiffOp::d() - DiffOp::identity();
    TrivialityReport r1 = trivial_singularity_check(d_minus_1, Rat(1), 1);
    CHECK(r1.verdict == Verdict::Fail);
    CHECK(r1.dimension == 0);

    DiffOp a = weyl_multiply(DiffOp::z() - DiffOp::identity(), DiffOp::d()) - DiffOp::identity();
    TrivialityReport r2 = trivial_singularity_check(a, Rat(1), 1);
    CHECK(r2.verdict == Verdict::Pass);
    CHECK(r2.dimension == 1);

    // ordinary point with no vanishing demanded: full basis
    testutil::Rng rng(55);
    for (int rep = 0; rep < 8; ++rep) {
        DiffOp b = random_op(rng, 2, 2);
        Rat xi(rng.range(2, 5));
        if (b.coefficient_of_d(b.order()).eval(xi) == 0) continue;
        TrivialityReport r = trivial_singularity_check(b, xi, 0);
        CHECK(r.dimension == b.order());
        CHECK(r.verdict == Verdict::Pass);
    }

    // theta^2 - 2 has irrational exponents at its singular point 0
    DiffOp t2 = weyl_multiply(DiffOp::theta(), DiffOp::theta()) -
                DiffOp::monomial(0, 0, Rat(2));
    TrivialityReport r3 = trivial_singularity_check(t2, Rat(0), 1);
    CHECK(r3.verdict == Verdict::Indeterminate);
}

TEST_CASE("exp_poly_borel") {
    auto one = exp_poly_borel({{Rat(1), Rat(1)}}, 12);
    REQUIRE(one.fractions.terms().size() == 1);
    CHECK(one.fractions.terms()[0].pole == 1);
    CHECK(one.fractions.terms()[0].coefficient == -1);
    for (std::size_t n = 0; n <= 12; ++n) CHECK(one.series.coeff(n) == 1);
    CHECK(one.fractions.series_at_zero(12) == one.series.coeffs());

    // 2 sinh z: poles at +-1, series 0, 2, 0, 2, ...
    auto sinh2 = exp_poly_borel({{Rat(1), Rat(1)}, {Rat(-1), Rat(-1)}}, 11);
    CHECK(sinh2.fractions.series_at_zero(11) == sinh2.series.coeffs());
    for (std::size_t n = 0; n <= 11; ++n) CHECK(sinh2.series.coeff(n) == (n % 2 ? 2 : 0));

    auto empty = exp_poly_borel({}, 5);
    CHECK(empty.series.is_zero());
    CHECK(empty.fractions.terms().empty());

    CHECK_THROWS_AS(exp_poly_borel({{Rat(1), Rat(1)}, {Rat(1), Rat(2)}}, 5),
                    std::invalid_argument);

    // order-(-1) normalization of an exponential polynomial has bounded profile
    auto mix = exp_poly_borel({{Rat(2), Rat(1)}, {Rat(-1), Rat(3)}, {Rat(0), Rat(1)}}, 64);
    GevreySeries as_e(Rat(-1), mix.series.coeffs());
    CHECK(arith_profile(as_e).consistent_with_G());
}
