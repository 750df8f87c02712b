#pragma once

#include <functional>
#include <vector>

#include "epscalc/jet.hpp"

namespace epscalc {

using RealFun = std::function<double(double)>;

// Two-sided Riemann bracket: piecewise-constant lower/upper bounds summed
// over n_panels equal panels of [a, b]. Refinement never widens. When
// rigorous, the panels carry a monotone hypothesis checked by a slope-sign
// scan and the true area lies in [lo, hi]; otherwise the bounds were sampled
// and the flag says so.
struct IntegralBracket {
    double lo = 0.0;
    double hi = 0.0;
    long long n_panels = 0;
    double a = 0.0;
    double b = 0.0;
    bool rigorous = true;

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

// Rectangle lower/upper sums with panel doubling until hi - lo <= tol (or a
// hard panel cap, reached only for unreasonably small tol; the returned
// width then tells the truth). A 257-point slope-sign scan decides whether
// the monotone-segment hypothesis holds; an inconclusive scan drops to
// min/max sampling inside each panel and clears `rigorous`. Caller-supplied
// breakpoints (ordered, inside [a,b]) vouch for piecewise monotonicity and
// skip the scan. Reversed endpoints integrate back-to-front: the bracket is
// sign-flipped. Panel sums use pairwise accumulation, so a constant
// integrand comes out exact with zero width.
IntegralBracket integrate(const RealFun& f, double a, double b, double tol,
                          const std::vector<double>& breakpoints = {});

// Jet of F(x) = integral of f from x0_base to x, taken at x1:
//   value = bracket midpoint, slope = f(x1),
//   env   = fitted continuity envelope of f at x1, plus a term covering the
//           bracket widths so |F(x1+e) - F(x1) - f(x1) e| <= |e| * bound(e)
//           holds down to 2^-20 of the integration span.
Jet1 ftc_jet(const RealFun& f, double x0_base, double x1, double tol);

} // namespace epscalc
