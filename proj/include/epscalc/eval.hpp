#pragma once

#include "epscalc/expr.hpp"
#include "epscalc/jet.hpp"

namespace epscalc {

// Recursive rule-algebra evaluation. Transcendental leaves go through the
// curve-area kernels (and ln through the area read-off), never through the
// host math library. tol is handed to those kernels per call.
Jet1 eval_jet(const Expr& e, double x0, double tol = 1e-9);

// Value-only walk sharing the same kernels and tolerances, so values agree
// with eval_jet to the last bit wherever both are defined. Also defined at
// the few points where the jet is not (abs at 0, sqrt at 0).
double eval_value(const Expr& e, double x0, double tol = 1e-9);

} // namespace epscalc
