#include "doctest.h"

#include <cmath>
#include <random>

#include "epscalc/envelope.hpp"

using namespace epscalc;

TEST_CASE("analytic construction validates its parameters") {
    CHECK_NOTHROW(ErrorEnvelope::analytic(0.0, 1.0, 1.0));
    CHECK_THROWS_AS(ErrorEnvelope::analytic(-1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ErrorEnvelope::analytic(1.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(ErrorEnvelope::analytic(1.0, -2.0, 1.0), DomainError);
    CHECK_THROWS_AS(ErrorEnvelope::analytic(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(ErrorEnvelope::analytic(1.0, 1.0, -0.5), DomainError);
    double nan = std::nan("");
    CHECK_THROWS_AS(ErrorEnvelope::analytic(1.0, 1.0, nan), DomainError);
}

TEST_CASE("bound is C*|eps|^p and zero stays exactly zero") {
    ErrorEnvelope e = ErrorEnvelope::analytic(2.0, 2.0, 1.0);
    CHECK(e.bound(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(e.bound(-0.5) == e.bound(0.5)); // even in eps
    CHECK(e.bound(0.0) == 0.0);

    ErrorEnvelope z = ErrorEnvelope::zero();
    CHECK(z.C == 0.0);
    CHECK(z.p == 1.0);
    CHECK(z.r == 1.0);
    CHECK(z.bound(0.7) == 0.0);
    CHECK(ErrorEnvelope::zero(0.25).r == 0.25);

    ErrorEnvelope emp = ErrorEnvelope::empirical([](double x) { return x * x; }, 1.0);
    CHECK(!emp.is_analytic());
    CHECK_THROWS_AS(emp.bound(0.5), DomainError);
}

TEST_CASE("certification grid shape") {
    auto g = cert_grid(1.0);
    CHECK(g.size() == 4097);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 1.0);
    CHECK(g[2] == -1.0);
    // innermost magnitude is r * 2^-40, sign-mirrored
    CHECK(std::fabs(g[g.size() - 2]) == doctest::Approx(0x1p-40).epsilon(1e-12));
    CHECK(g[g.size() - 2] == -g[g.size() - 1]);
    for (size_t i = 1; i + 2 < g.size(); i += 2) {
        CHECK(g[i] == -g[i + 1]);
        CHECK(std::fabs(g[i + 2]) < std::fabs(g[i])); // strictly decreasing magnitudes
    }

    auto small = cert_grid(0.5, 128);
    CHECK(small.size() == 257);
    CHECK(small[1] == 0.5);
    CHECK_THROWS_AS(cert_grid(0.0), DomainError);
}

TEST_CASE("sum rule: coefficients add, exponents take the min, radius clamps") {
    ErrorEnvelope a = ErrorEnvelope::analytic(2.0, 1.0, 0.5);
    ErrorEnvelope b = ErrorEnvelope::analytic(3.0, 2.0, 0.8);
    ErrorEnvelope s = env_sum(a, b);
    CHECK(s.C == 5.0);
    CHECK(s.p == 1.0);
    CHECK(s.r == 0.5);

    // the sum really dominates bound_a + bound_b on its radius
    ErrorEnvelope truth = ErrorEnvelope::empirical(
        [&](double e) { return a.bound(e) + b.bound(e); }, s.r);
    CHECK(bool(env_dominates(s, truth)));

    // zero operand passes the other through, radius still clamped to <= 1
    ErrorEnvelope wide = ErrorEnvelope::analytic(4.0, 3.0, 7.0);
    ErrorEnvelope z = env_sum(ErrorEnvelope::zero(5.0), wide);
    CHECK(z.C == 4.0);
    CHECK(z.p == 3.0);
    CHECK(z.r == 1.0);

    ErrorEnvelope emp = ErrorEnvelope::empirical([](double e) { return e; }, 1.0);
    CHECK_THROWS_AS(env_sum(a, emp), CertificationError);
}

TEST_CASE("scale rule multiplies C by the certified sup bound") {
    ErrorEnvelope e = ErrorEnvelope::analytic(2.0, 1.5, 0.7);
    ErrorEnvelope s = env_scale_bounded(e, 3.0);
    CHECK(s.C == 6.0);
    CHECK(s.p == 1.5);
    CHECK(s.r == 0.7);

    CHECK(env_scale_bounded(e, 0.0).C == 0.0);
    CHECK_THROWS_AS(env_scale_bounded(e, -1.0), DomainError);
    ErrorEnvelope emp = ErrorEnvelope::empirical([](double x) { return x; }, 1.0);
    CHECK_THROWS_AS(env_scale_bounded(emp, 2.0), CertificationError);
}

TEST_CASE("composition rule: exponents multiply, radius shrinks until the inner range fits") {
    ErrorEnvelope outer = ErrorEnvelope::analytic(2.0, 2.0, 0.5);
    ErrorEnvelope inner = ErrorEnvelope::analytic(3.0, 1.0, 1.0);
    ErrorEnvelope c = env_compose(outer, inner);
    // r halves from 1 until 3*r <= 0.5, i.e. r = 0.125
    CHECK(c.r == 0.125);
    CHECK(c.C == 18.0); // outer.C * inner.C^outer.p = 2 * 9
    CHECK(c.p == 2.0);  // exponents multiply: 2 * 1

    // inner values stay inside outer's radius on the composed grid, so the
    // nested bound is the truth the composition must dominate
    ErrorEnvelope truth = ErrorEnvelope::empirical(
        [&](double e) { return outer.bound(inner.bound(e)); }, c.r);
    CHECK(bool(env_dominates(c, truth)));

    ErrorEnvelope zc = env_compose(outer, ErrorEnvelope::zero());
    CHECK(zc.C == 0.0);

    ErrorEnvelope emp = ErrorEnvelope::empirical([](double x) { return x; }, 1.0);
    CHECK_THROWS_AS(env_compose(emp, inner), CertificationError);
    CHECK_THROWS_AS(env_compose(outer, emp), CertificationError);
}

TEST_CASE("domination is checked on the shared grid with slack") {
    ErrorEnvelope big = ErrorEnvelope::analytic(2.0, 1.0, 1.0);
    ErrorEnvelope small = ErrorEnvelope::analytic(1.0, 1.0, 1.0);
    CHECK(bool(env_dominates(big, small)));
    // equality passes thanks to the slack factor
    CHECK(bool(env_dominates(big, big)));

    // |e| is NOT dominated by e^2 near zero; the witness shows where
    DominationResult d = env_dominates(ErrorEnvelope::analytic(1.0, 2.0, 1.0), small);
    CHECK(!d.pass);
    CHECK(d.witness_value > d.witness_bound);
    CHECK(std::fabs(d.witness_eps) <= 1.0);

    ErrorEnvelope bad = ErrorEnvelope::empirical(
        [](double e) { return e == 0.0 ? 0.0 : std::nan(""); }, 1.0);
    CHECK_THROWS_AS(env_dominates(big, bad), CertificationError);
    CHECK_THROWS_AS(env_dominates(bad, small), CertificationError);
}

TEST_CASE("funnel boxes invert the analytic bound and nest strictly") {
    ErrorEnvelope e = ErrorEnvelope::analytic(1.0, 1.0, 1.0);
    auto boxes = funnel_boxes(e, 0.5, 10);
    REQUIRE(boxes.size() == 10);
    double y = 0.5;
    for (size_t k = 0; k < boxes.size(); ++k, y *= 0.5) {
        CHECK(boxes[k].y_hi == y);
        CHECK(boxes[k].y_lo == -y);
        CHECK(boxes[k].x_hi == y); // w = (y/C)^(1/p) = y here
        CHECK(boxes[k].x_lo == -boxes[k].x_hi);
        if (k > 0) {
            CHECK(boxes[k].x_hi < boxes[k - 1].x_hi);
            CHECK(boxes[k].y_hi < boxes[k - 1].y_hi);
        }
    }

    // width saturates at the working radius
    auto capped = funnel_boxes(ErrorEnvelope::analytic(1.0, 1.0, 0.25), 1.0, 2);
    CHECK(capped[0].x_hi == 0.25);
    CHECK(capped[1].x_hi == 0.25); // y=0.5 still inverts past r

    CHECK_THROWS_AS(funnel_boxes(e, 0.0, 3), DomainError);
    CHECK_THROWS_AS(funnel_boxes(e, 1.0, 0), DomainError);
}

TEST_CASE("empirical funnel widths are found by verified bisection") {
    ErrorEnvelope emp = ErrorEnvelope::empirical(
        [](double x) { return std::pow(std::fabs(x), 1.5); }, 1.0);
    auto boxes = funnel_boxes(emp, 0.5, 6);
    REQUIRE(boxes.size() == 6);
    double y = 0.5;
    for (const auto& b : boxes) {
        // every box must actually hold samples: |e|^1.5 <= y for |e| <= w
        CHECK(std::pow(b.x_hi, 1.5) <= y * kCertSlack);
        // and be close to the exact inversion y^(2/3)
        CHECK(b.x_hi == doctest::Approx(std::pow(y, 2.0 / 3.0)).epsilon(1e-6));
        y *= 0.5;
    }
}

TEST_CASE("analytic funnel with a live sampler re-verifies every box") {
    // honest sampler passes
    ErrorEnvelope ok = ErrorEnvelope::analytic_sampled(
        1.0, 1.0, 1.0, [](double x) { return 0.5 * std::fabs(x); });
    CHECK_NOTHROW(funnel_boxes(ok, 0.5, 4));

    // sampler exceeding the claimed bound trips verification
    ErrorEnvelope liar = ErrorEnvelope::analytic_sampled(
        1.0, 2.0, 1.0, [](double x) { return std::fabs(x); });
    CHECK_THROWS_AS(funnel_boxes(liar, 0.25, 3), CertificationError);
}

TEST_CASE("randomized closure spot-check: rules dominate their defining truth") {
    std::mt19937 rng(20260819u);
    std::uniform_real_distribution<double> Cd(0.0, 4.0), pd(0.25, 3.0), rd(0.05, 1.0);
    for (int i = 0; i < 100; ++i) {
        ErrorEnvelope a = ErrorEnvelope::analytic(Cd(rng), pd(rng), rd(rng));
        ErrorEnvelope b = ErrorEnvelope::analytic(Cd(rng), pd(rng), rd(rng));

        ErrorEnvelope s = env_sum(a, b);
        ErrorEnvelope st = ErrorEnvelope::empirical(
            [&](double e) { return a.bound(e) + b.bound(e); }, s.r);
        CAPTURE(i);
        CHECK(bool(env_dominates(s, st)));

        double M = 3.0 * Cd(rng) / 4.0;
        ErrorEnvelope sc = env_scale_bounded(a, M);
        ErrorEnvelope sct =
            ErrorEnvelope::empirical([&](double e) { return M * a.bound(e); }, sc.r);
        CHECK(bool(env_dominates(sc, sct)));

        ErrorEnvelope co = env_compose(a, b);
        ErrorEnvelope cot = ErrorEnvelope::empirical(
            [&](double e) { return a.bound(b.bound(e)); }, co.r);
        CHECK(bool(env_dominates(co, cot)));
    }
}
