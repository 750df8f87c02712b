#include "doctest.h"

#include <cmath>

#include "epscalc/integrate.hpp"

using namespace epscalc;

TEST_CASE("constants integrate to an exact zero-width bracket") {
    IntegralBracket b = integrate([](double) { return 2.5; }, 0.0, 4.0, 1e-9);
    CHECK(b.lo == 10.0);
    CHECK(b.hi == 10.0);
    CHECK(b.width() == 0.0);
    CHECK(b.rigorous);

    // negative constants and awkward spans too: the panel sums pair losslessly
    IntegralBracket n = integrate([](double) { return -3.0; }, 0.25, 1.75, 1e-9);
    CHECK(n.lo == -4.5);
    CHECK(n.hi == -4.5);
}

TEST_CASE("empty range is the zero bracket") {
    IntegralBracket b = integrate([](double x) { return x; }, 1.0, 1.0, 1e-9);
    CHECK(b.lo == 0.0);
    CHECK(b.hi == 0.0);
    CHECK(b.n_panels == 0);
}

TEST_CASE("monotone integrands get rigorous endpoint brackets") {
    IntegralBracket b = integrate([](double t) { return 1.0 / t; }, 1.0, 2.0, 1e-6);
    CHECK(b.rigorous);
    CHECK(b.width() <= 1e-6);
    CHECK(b.lo <= 0.6931471805599453);
    CHECK(0.6931471805599453 <= b.hi);

    IntegralBracket lin = integrate([](double x) { return x; }, 0.0, 1.0, 1e-7);
    CHECK(lin.lo <= 0.5);
    CHECK(0.5 <= lin.hi);
    CHECK(lin.width() <= 1e-7);
}

TEST_CASE("one interior extremum still counts as tame") {
    IntegralBracket b = integrate([](double x) { return std::sin(x); }, 0.0,
                                  3.141592653589793, 1e-6);
    double truth = 1.0 - std::cos(3.141592653589793);
    CHECK(b.rigorous);
    CHECK(b.lo <= truth);
    CHECK(truth <= b.hi);
}

TEST_CASE("reversing the endpoints flips the bracket exactly") {
    auto f = [](double t) { return 1.0 / t; };
    IntegralBracket fwd = integrate(f, 1.0, 2.0, 1e-6);
    IntegralBracket rev = integrate(f, 2.0, 1.0, 1e-6);
    CHECK(rev.lo == -fwd.hi);
    CHECK(rev.hi == -fwd.lo);
    CHECK(rev.a == 2.0);
    CHECK(rev.b == 1.0);
}

TEST_CASE("breakpoints vouch for piecewise-tame integrands") {
    auto f = [](double x) { return std::fabs(x); };
    IntegralBracket b = integrate(f, -1.0, 1.0, 1e-6, {0.0});
    CHECK(b.rigorous);
    CHECK(b.lo <= 1.0);
    CHECK(1.0 <= b.hi);
    CHECK(b.width() <= 1e-6);

    CHECK_THROWS_AS(integrate(f, -1.0, 1.0, 1e-6, {2.0}), DomainError);
}

TEST_CASE("wild oscillation is flagged, not silently trusted") {
    // ~64 direction changes across [0,1], sampled densely enough (phase step
    // ~0.78 rad) that the pre-scan cannot alias past them
    auto f = [](double x) { return std::sin(200.0 * x); };
    IntegralBracket b = integrate(f, 0.0, 1.0, 1e-3);
    CHECK(!b.rigorous);
    CHECK(b.width() <= 1e-3);
}

TEST_CASE("tolerance must be positive") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, -1e-6), DomainError);
}

TEST_CASE("accumulated area jet: slope is the integrand value") {
    auto f = [](double t) { return 1.0 / t; };
    Jet1 j = ftc_jet(f, 1.0, 2.0, 1e-7);
    CHECK(j.x0 == 2.0);
    CHECK(j.slope == 0.5); // exactly f(x1), by construction
    CHECK(std::fabs(j.value - 0.6931471805599453) <= 1e-7);
    CHECK(j.env.r > 0.0);

    // first-order contract at a few offsets, each measured with a fresh bracket
    for (double eps : {0.25, -0.25, 0x1p-6, -0x1p-6, 0x1p-12}) {
        IntegralBracket Fb = integrate(f, 1.0, 2.0 + eps, 1e-7);
        double defect = std::fabs(Fb.mid() - j.value - j.slope * eps);
        CAPTURE(eps);
        CHECK(defect <= std::fabs(eps) * j.env.bound(std::fabs(eps)) * kCertSlack);
    }
}
