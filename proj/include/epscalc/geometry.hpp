#pragma once

#include <vector>

#include "epscalc/errors.hpp"
#include "epscalc/interval.hpp"
#include "epscalc/report.hpp"

namespace epscalc {

// The three defining curves. Areas of the standard regions against them are
// the only source of transcendental values in the engine: no std::sin/cos/
// exp/log/pow anywhere on these paths, only arithmetic, certified square
// roots, and bracketed panel sums.
enum class CurveId { Circle, Hyperbola, SkewHyperbola };

struct AreaBracket {
    double lo = 0.0;
    double hi = 0.0;
    long n_panels = 0;
    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
};

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
};

// Certified enclosure of sqrt(v): Newton from above, lower bound v/hi.
Interval sqrt_interval(double v);

// Area of the standard region at curve point x:
//   Circle (-1 < x <= 1): pie slice between the positive x-axis ray and the
//     ray to (x, +sqrt(1-x^2)); equals half the angle-area A.
//   Hyperbola (x >= 1): region bounded by the x-axis, the arc from (1,0) to
//     (x, +sqrt(x^2-1)) and the chord back to the origin; equals A/2.
//   SkewHyperbola (x >= 1): area under 1/t over [1, x]; equals A itself.
// Bracket width <= tol or CertificationError if the panel cap can't reach it.
AreaBracket sector_area(CurveId curve, double x, double tol);

// Inverse of sector_area: the curve point whose region area matches target
// (same area convention as sector_area). Deterministic bisection; converges
// when the area bracket at the midpoint straddles the target with width <=
// tol, or the coordinate interval collapses to adjacent doubles.
CurvePoint solve_area(CurveId curve, double target, double tol);

struct PairValue {
    double first = 0.0;  // cos / cosh / exp
    double second = 0.0; // sin / sinh / (exp unused)
};

// cos & sin by circle area solving; |A| reduced mod pi with sign flips.
PairValue geo_cos_sin(double A, double tol = 1e-9);
// cosh & sinh; |A| > 2 halved into range, then the doubling map
// (x,y) -> (x^2+y^2, 2xy) applied back out.
PairValue geo_cosh_sinh(double A, double tol = 1e-9);
// exp by skew-hyperbola area solving; A > 2 halved then squared back,
// negative A via exp(-A) = 1/exp(A) exactly.
double geo_exp(double A, double tol = 1e-9);

// pi enclosure: 4x the quarter-circle area bracket (built by symmetric
// pairing of the diagonal slice), cached at first use.
const Interval& pi_bracket();
const Interval& quarter_circle_area(); // pi/4 enclosure

struct SumMatrix {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
    CurveId curve = CurveId::Circle;
    double det() const { return a11 * a22 - a12 * a21; }
};

// The area-summing map T_B: rotation (circle), hyperbolic rotation
// (hyperbola), diagonal squeeze (skew). Determinant certified to 1e-12.
SumMatrix sum_matrix(CurveId curve, double B, double tol = 1e-13);
CurvePoint apply(const SumMatrix& m, const CurvePoint& p);

// |defining equation| residual of p on the curve (x^2+y^2-1 etc.)
double curve_residual(CurveId curve, const CurvePoint& p);

// Summation identities at (A, B): cos/sin, cosh/sinh, or exp of A+B versus
// the combined values. pass uses `tol` on the residual.
std::vector<CheckRecord> verify_summation(CurveId curve, double A, double B,
                                          double tol = 1e-7);

// Derivative-at-zero squeezes on a decreasing positive grid, with the
// evaluation slack accounted; appends records for the E(A) samples shrinking
// monotonically and ending below 1e-5.
std::vector<CheckRecord> verify_deriv_zero_inequalities(CurveId curve,
                                                        const std::vector<double>& grid);

// Closed-form area lower bound for the unit-area parallelogram argument:
// 5x / (3 (2 sqrt(9x^2-1) + 3 sqrt(4x^2-1))), strictly above 5/36 for x >= 1.
Interval parallelogram_bound(double x);

namespace detail {
// test hooks
PairValue cosh_sinh_forced_doublings(double A, double tol, int min_doublings);
AreaBracket skew_area_signed(double x, double tol); // signed for 0 < x < 1
} // namespace detail

} // namespace epscalc
