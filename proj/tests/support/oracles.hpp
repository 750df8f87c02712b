#pragma once

// Test-side reference machinery. Library transcendentals and brute-force
// refinements are fine HERE: tests hold the oracles, the product does not.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

using Fn = std::function<double(double)>;

// central difference; callers pick h and the evaluation tolerance of f
inline double fd_slope(const Fn& f, double x, double h = 1e-4) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// midpoint Riemann refinement, error O(h^2) for smooth f
inline double riemann(const Fn& f, double a, double b, long n = 2000000) {
    double h = (b - a) / double(n);
    double acc = 0.0, comp = 0.0; // Kahan
    for (long i = 0; i < n; ++i) {
        double v = f(a + (double(i) + 0.5) * h) - comp;
        double t = acc + v;
        comp = (t - acc) - v;
        acc = t;
    }
    return acc * h;
}

// expression corpus with base-point ranges that keep every subterm inside
// its domain with room for finite differences and envelope radii
struct CorpusEntry {
    const char* src;
    double lo, hi;
};

inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> c = {
        {"x^2+3*x-1", -3.0, 3.0},
        {"x^3-2*x+1", -2.0, 2.0},
        {"(x^2+1)/(x^2-4)", -1.5, 1.5},
        {"sin(x)", -3.0, 3.0},
        {"cos(x)*sin(x)", -3.0, 3.0},
        {"sin(x^2)", -2.0, 2.0},
        {"exp(x)", -2.0, 2.0},
        {"exp(-x^2)", -2.0, 2.0},
        {"ln(x)", 0.5, 4.0},
        {"ln(x^2+1)", -2.0, 2.0},
        {"sqrt(x)", 0.25, 4.0},
        {"sqrt(x^2+1)", -2.0, 2.0},
        {"sinh(x)", -2.0, 2.0},
        {"cosh(x)", -2.0, 2.0},
        {"x*exp(x)", -2.0, 1.5},
        {"sin(x)/x", 0.5, 3.0},
        {"exp(sin(x))", -3.0, 3.0},
        {"x^-2", 0.5, 3.0},
        {"x^(3/2)", 0.3, 4.0},
        {"(1+x)^(1/3)", -0.5, 3.0},
        {"cos(x^2)-sin(x)", -2.0, 2.0},
        {"1/(1+x^2)", -3.0, 3.0},
        {"sinh(x)/cosh(x)", -2.0, 2.0},
        {"ln(cosh(x))", -2.0, 2.0},
        {"abs(x^3)", 0.4, 2.0},
    };
    return c;
}

// the same expressions as plain cmath lambdas, index-aligned with corpus()
inline Fn corpus_oracle(std::size_t i) {
    static const std::vector<Fn> fns = {
        [](double x) { return x * x + 3 * x - 1; },
        [](double x) { return x * x * x - 2 * x + 1; },
        [](double x) { return (x * x + 1) / (x * x - 4); },
        [](double x) { return std::sin(x); },
        [](double x) { return std::cos(x) * std::sin(x); },
        [](double x) { return std::sin(x * x); },
        [](double x) { return std::exp(x); },
        [](double x) { return std::exp(-x * x); },
        [](double x) { return std::log(x); },
        [](double x) { return std::log(x * x + 1); },
        [](double x) { return std::sqrt(x); },
        [](double x) { return std::sqrt(x * x + 1); },
        [](double x) { return std::sinh(x); },
        [](double x) { return std::cosh(x); },
        [](double x) { return x * std::exp(x); },
        [](double x) { return std::sin(x) / x; },
        [](double x) { return std::exp(std::sin(x)); },
        [](double x) { return 1.0 / (x * x); },
        [](double x) { return std::pow(x, 1.5); },
        [](double x) { return std::cbrt(1.0 + x); },
        [](double x) { return std::cos(x * x) - std::sin(x); },
        [](double x) { return 1.0 / (1.0 + x * x); },
        [](double x) { return std::tanh(x); },
        [](double x) { return std::log(std::cosh(x)); },
        [](double x) { return std::fabs(x * x * x); },
    };
    return fns.at(i);
}

// deterministic base points inside [lo, hi], margin away from the edges
inline std::vector<double> base_points(const CorpusEntry& e, int n, unsigned seed) {
    std::mt19937 rng(seed);
    double margin = 0.05 * (e.hi - e.lo);
    std::uniform_real_distribution<double> dist(e.lo + margin, e.hi - margin);
    std::vector<double> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back(dist(rng));
    return pts;
}

} // namespace oracles
