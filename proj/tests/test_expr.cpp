#include "doctest.h"

#include <cmath>
#include <string>

#include "epscalc/eval.hpp"
#include "epscalc/expr.hpp"
#include "support/oracles.hpp"

using namespace epscalc;

TEST_CASE("precedence and associativity") {
    CHECK(eval_value(parse("1+2*3"), 0.0) == 7.0);
    CHECK(eval_value(parse("2*3^2"), 0.0) == 18.0);
    CHECK(eval_value(parse("-x^2"), 3.0) == -9.0); // unary minus binds looser than ^
    CHECK(eval_value(parse("10-4-3"), 0.0) == 3.0);
    CHECK(eval_value(parse("16/4/2"), 0.0) == 2.0);
    CHECK(eval_value(parse("(x^2+1)/(x^2-4)"), 1.0) == doctest::Approx(-2.0 / 3.0));
}

TEST_CASE("exponents are exact rationals, reduced and validated") {
    Expr a = parse("x^(3/2)");
    CHECK(a->kind == ExprKind::Pow);
    CHECK(a->pow_num == 3);
    CHECK(a->pow_den == 2);

    Expr reduced = parse("x^(2/4)");
    CHECK(reduced->pow_num == 1);
    CHECK(reduced->pow_den == 2);

    Expr dec = parse("x^0.5"); // decimal exponents fold to rationals
    CHECK(dec->pow_num == 1);
    CHECK(dec->pow_den == 2);

    Expr neg = parse("x^-2");
    CHECK(neg->pow_num == -2);
    CHECK(neg->pow_den == 1);

    CHECK(eval_value(parse("x^(3/2)"), 4.0) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(eval_value(parse("x^(1/3)"), 8.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("parse errors carry a byte offset") {
    for (const char* bad : {"x+", "2 x", "sin x", "x^y", "foo(x)", "(x", "x^(1/0)",
                            "1e5", "x*/2", ""}) {
        CAPTURE(bad);
        bool threw = false;
        try {
            parse(bad);
        } catch (const ParseError& e) {
            threw = true;
            CHECK(e.offset <= std::string(bad).size());
        }
        CHECK(threw);
    }
}

TEST_CASE("text form round-trips every corpus expression") {
    for (const auto& entry : oracles::corpus()) {
        CAPTURE(entry.src);
        Expr e = parse(entry.src);
        Expr back = parse(to_text(e));
        CHECK(expr_equal(e, back));
    }
    // builders print parseable text too
    Expr built = ex_mul(ex_pow(ex_var(), 3, 2), ex_call(CallName::Sin, ex_var()));
    CHECK(expr_equal(built, parse(to_text(built))));
}

TEST_CASE("structural equality is syntactic") {
    CHECK(expr_equal(parse("x + 1"), parse("x+1")));
    CHECK(!expr_equal(parse("1+x"), parse("x+1")));
    CHECK(!expr_equal(parse("x^2"), parse("x*x")));
}

TEST_CASE("values match library references across the corpus") {
    const auto& corpus = oracles::corpus();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        Expr e = parse(corpus[i].src);
        auto ref = oracles::corpus_oracle(i);
        for (double x : oracles::base_points(corpus[i], 2, 7001u + unsigned(i))) {
            double got = eval_value(e, x, 1e-10);
            double want = ref(x);
            CAPTURE(corpus[i].src);
            CAPTURE(x);
            CHECK(std::fabs(got - want) <= 1e-8 * std::max(1.0, std::fabs(want)));
        }
    }
}

TEST_CASE("jet slopes match finite differences on a spot sample") {
    for (const char* src : {"sin(x)*exp(x)", "ln(x^2+1)", "x^(3/2)"}) {
        Expr e = parse(src);
        double x0 = 1.3;
        Jet1 j = eval_jet(e, x0, 1e-10);
        auto f = [&](double x) { return eval_value(e, x, 1e-12); };
        double fd = oracles::fd_slope(f, x0);
        CAPTURE(src);
        CHECK(std::fabs(j.slope - fd) <= 1e-6 * std::max(1.0, std::fabs(fd)));
        CHECK(j.value == doctest::Approx(f(x0)).epsilon(1e-9));
    }
}

TEST_CASE("value-only points where the jet does not exist") {
    CHECK(eval_value(parse("abs(x)"), 0.0) == 0.0);
    CHECK(eval_value(parse("sqrt(x)"), 0.0) == 0.0);
    CHECK_THROWS_AS(eval_jet(parse("abs(x)"), 0.0), DomainError);
    CHECK_THROWS_AS(eval_jet(parse("sqrt(x)"), 0.0), DomainError);
    CHECK_THROWS_AS(eval_value(parse("ln(x)"), -1.0), DomainError);
    CHECK_THROWS_AS(eval_value(parse("1/x"), 0.0), DomainError);
}

TEST_CASE("jets agree between value and jet walks at shared points") {
    Expr e = parse("exp(sin(x))");
    double v = eval_value(e, 0.8, 1e-10);
    Jet1 j = eval_jet(e, 0.8, 1e-10);
    CHECK(v == j.value); // same kernels, same tolerances, bit-identical
}
