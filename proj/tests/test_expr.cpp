#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gevrey/expr.hpp"
#include "test_util.hpp"

using namespace gevrey;

TEST_CASE("parsing basics") {
    ExprPtr e = parse_expr("n * n!");
    REQUIRE(e->kind == ExprKind::Mul);
    CHECK(e->args[0]->kind == ExprKind::Var);
    CHECK(e->args[1]->kind == ExprKind::Factorial);

    ExprPtr f = parse_expr("n^5 * (n+1)!");
    REQUIRE(f->kind == ExprKind::Mul);
    CHECK(f->args[0]->kind == ExprKind::Pow);
    CHECK(f->args[1]->kind == ExprKind::Factorial);
    CHECK(f->args[1]->args[0]->kind == ExprKind::Add);
}

TEST_CASE("error categories and positions") {
    CHECK_THROWS_AS(parse_expr("n !!"), SyntaxError);
    try {
        parse_expr("n !!");
    } catch (const SyntaxError& e) {
        CHECK(e.pos().column == 4);  // the second bang
    }
    CHECK_THROWS_AS(parse_expr("n @ 2"), LexicalError);
    CHECK_THROWS_AS(parse_expr("(n + 1"), SyntaxError);
    CHECK_THROWS_AS(parse_expr(""), SyntaxError);
    CHECK_THROWS_AS(parse_expr("n n"), SyntaxError);
}

TEST_CASE("evaluation") {
    std::map<std::string, Rat> env{{"n", Rat(4)}};
    CHECK(eval_rational(parse_expr("n * n!"), env) == 96);
    CHECK(eval_rational(parse_expr("n^5 * (n+1)!"), env) == Rat(1024) * Rat(120));
    CHECK(eval_rational(parse_expr("1/2 + 1/3"), {}) == make_rat(Int(5), Int(6)));
    CHECK(eval_rational(parse_expr("2^-3"), {}) == make_rat(Int(1), Int(8)));
    CHECK(eval_rational(parse_expr("0^n"), env) == 0);
    CHECK(eval_rational(parse_expr("0^n"), {{"n", Rat(0)}}) == 1);

    QContext q2(Rat(2));
    CHECK(eval_rational(parse_expr("1/qfac(n)"), {{"n", Rat(2)}}, &q2) ==
          make_rat(Int(1), Int(3)));
    CHECK_THROWS_AS(eval_rational(parse_expr("x + 1"), env), EvalError);
    CHECK_THROWS_AS(eval_rational(parse_expr("(1/2)!"), {}), EvalError);
}

TEST_CASE("factorial spec extraction") {
    FactorialSeriesSpec s1 = extract_factorial_spec(parse_expr("n * n!"));
    CHECK(s1.weight_exponent == 1);
    CHECK(s1.P == Poly::variable());

    // n^5 (n+1)! normalizes to (n^6 + n^5) n!
    FactorialSeriesSpec s2 = extract_factorial_spec(parse_expr("n^5 * (n+1)!"));
    CHECK(s2.weight_exponent == 1);
    Poly x = Poly::variable();
    Poly expected = x * x * x * x * x * (x + Poly(Rat(1)));
    CHECK(s2.P == expected);

    FactorialSeriesSpec s3 = extract_factorial_spec(parse_expr("n!^2 * (3*n - 1)"));
    CHECK(s3.weight_exponent == 2);

    FactorialSeriesSpec s4 = extract_factorial_spec(parse_expr("n! + n * n!"));
    CHECK(s4.P == x + Poly(Rat(1)));

    CHECK_THROWS_AS(extract_factorial_spec(parse_expr("n + 1")), EvalError);
    CHECK_THROWS_AS(extract_factorial_spec(parse_expr("n! + 1")), EvalError);
    CHECK_THROWS_AS(extract_factorial_spec(parse_expr("(2*n)!")), EvalError);
}

TEST_CASE("differential operator evaluation") {
    DiffOp a = eval_diffop(parse_expr("z^2*D + z - 1"), {});
    DiffOp expected = DiffOp::monomial(2, 1, Rat(1)) + DiffOp::z() - DiffOp::identity();
    CHECK(a == expected);

    // juxtaposed products keep operator order: D*z = zD + 1
    CHECK(eval_diffop(parse_expr("D*z"), {}) == DiffOp::theta() + DiffOp::identity());
    CHECK(eval_diffop(parse_expr("z*D"), {}) == DiffOp::theta());

    CHECK(eval_diffop(parse_expr("(z*D)^2"), {}) ==
          DiffOp::monomial(2, 2, Rat(1)) + DiffOp::theta());

    CHECK_THROWS_AS(eval_diffop(parse_expr("S{2}*z"), {}), EvalError);
    CHECK_THROWS_AS(eval_diffop(parse_expr("z/D"), {}), EvalError);
}

TEST_CASE("q-difference operator evaluation") {
    QDiffOp a = eval_qdiffop(parse_expr("(1/(q*z))*S{1/q} - xi"), Rat(2), Rat(1));
    CHECK(a.ratio() == make_rat(Int(1), Int(2)));
    CHECK(a.order() == 1);
    const auto& c1 = a.coefficients().at(1);
    CHECK(c1 == RationalFunction(Poly(make_rat(Int(1), Int(2))), Poly::variable()));
    const auto& c0 = a.coefficients().at(0);
    CHECK(c0 == RationalFunction(Rat(-1)));

    // d{q} is (S{q} - 1)/((q-1) z)
    QDiffOp d = eval_qdiffop(parse_expr("d{q}"), Rat(3), Rat(1));
    CHECK(d.order() == 1);
    CHECK(d.coefficients().at(1) ==
          RationalFunction(Poly(Rat(1)), Poly::monomial(1, Rat(2))));

    CHECK_THROWS_AS(eval_qdiffop(parse_expr("S{q} + S{1/q}"), Rat(2), Rat(1)), std::exception);
}

TEST_CASE("pretty printing round-trips") {
    testutil::Rng rng(2718);
    std::function<ExprPtr(int)> gen = [&](int depth) -> ExprPtr {
        if (depth == 0 || rng.range(0, 3) == 0) {
            if (rng.range(0, 1) == 0) return Expr::integer(Int(rng.range(0, 50)));
            const char* names[] = {"n", "z", "q", "xi", "D"};
            return Expr::var(names[rng.range(0, 4)]);
        }
        switch (rng.range(0, 7)) {
            case 0: return Expr::node(ExprKind::Add, {gen(depth - 1), gen(depth - 1)});
            case 1: return Expr::node(ExprKind::Sub, {gen(depth - 1), gen(depth - 1)});
            case 2: return Expr::node(ExprKind::Mul, {gen(depth - 1), gen(depth - 1)});
            case 3: return Expr::node(ExprKind::Div, {gen(depth - 1), gen(depth - 1)});
            case 4: return Expr::node(ExprKind::Neg, {gen(depth - 1)});
            case 5: return Expr::node(ExprKind::Pow, {gen(depth - 1), gen(depth - 1)});
            case 6: return Expr::node(ExprKind::Factorial, {gen(depth - 1)});
            default: return Expr::node(ExprKind::Sigma, {gen(depth - 1)});
        }
    };
    for (int rep = 0; rep < 200; ++rep) {
        ExprPtr e = gen(4);
        ExprPtr back = parse_expr(pretty(e));
        CHECK(expr_equal(e, back));
    }
}
