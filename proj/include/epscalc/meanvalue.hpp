#pragma once

#include <functional>

#include "epscalc/envelope.hpp"
#include "epscalc/jet.hpp"

namespace epscalc {

// Interior point witnessing a mean value statement. `found` goes false when
// the scan ended on the boundary (monotone data) or the defect never met tol;
// callers get the best point either way, never an exception for "no witness".
struct Witness {
    double c = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool found = false;
};

using RealFun = std::function<double(double)>;
using JetProvider = std::function<Jet1(double)>;

// Logarithm read straight off the defining curve: ln y is the skew-hyperbola
// sector area at 2*mantissa plus a cached ln 2 per binade. Never taken from a
// library; the name records that it inverts geo_exp's defining identity.
double ln_from_exp(double y, double tol = 1e-12);

// Locate an interior extremizer of f on [a,b] by a 1024-point scan plus
// golden-section refinement, then assert |f'(c)| <= tol via the jet slope.
// Ties break toward the smallest c.
Witness find_critical(const RealFun& f, const JetProvider& fj, double a, double b,
                      double tol);

// Point with f'(c) equal to the secant slope, through the usual tilted helper.
Witness mvt_witness(const RealFun& f, const JetProvider& fj, double a, double b,
                    double tol);

// Cauchy form: f'(c)/g'(c) matches the increment ratio. g' is guarded against
// zeros on a sampled grid first; a hit is a precondition error.
Witness cmvt_witness(const RealFun& f, const RealFun& g, const JetProvider& fj,
                     const JetProvider& gj, double a, double b, double tol);

enum class Side { Left, Right };

struct LimitVerdict {
    double L = 0.0;
    ErrorEnvelope env = ErrorEnvelope::zero();       // certified bound on |f/g - L|
    ErrorEnvelope deriv_env = ErrorEnvelope::zero(); // fitted |f'/g' - L| (general form)
    bool has_deriv_env = false;
    double residual = 0.0; // |f/g - L| at the innermost sample
    bool pass = false;
    DominationResult domination;
};

// 0/0 form with both jets anchored at the same x0: L is the slope ratio, the
// envelope comes from the ratio-of-linear-forms algebra, and the result is
// checked by sampling f/g on a one-per-side geometric grid. eval_noise is the
// absolute error allowed per f or g sample (0 for exact arithmetic).
LimitVerdict lhopital_00(const Jet1& fjet, const Jet1& gjet, const RealFun& f,
                         const RealFun& g, double eval_noise = 0.0);

// Sampled one-sided form: f/g is sampled at x0 +/- radius*2^-k, k = 0..40, the
// residual against claimed_L is fitted to C*|eps|^p (least squares in log-log,
// noise-floored), the certified C is inflated and re-checked by domination on
// a denser grid. Jet providers are optional; when both are given the
// derivative ratio is fitted as well and reported in deriv_env.
LimitVerdict lhopital_general(const RealFun& f, const RealFun& g,
                              const JetProvider& fjp, const JetProvider& gjp,
                              double x0, Side side, double claimed_L, double tol,
                              double radius = 1.0, double eval_noise = 1e-11);

} // namespace epscalc
