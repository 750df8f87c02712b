#pragma once

#include <functional>
#include <vector>

#include "epscalc/envelope.hpp"
#include "epscalc/expr.hpp"

namespace epscalc {

// Order-n polynomial model around x0: f(x0+e) = sum c_k e^k + |e|^n * E(e)
// with E certified like any other envelope. coeffs holds c_0..c_n.
struct TaylorJet {
    double x0 = 0.0;
    std::vector<double> coeffs;
    int order = 1;
    ErrorEnvelope env = ErrorEnvelope::zero();
};

// evaluate the polynomial part at offset eps (Horner)
double tjet_poly(const TaylorJet& tj, double eps);

// Build by truncated-series arithmetic over the expression tree; primitive
// series come from the curve-derivative pairs (sin'=cos, cosh'=sinh, exp'=exp,
// and so on), seeded with kernel values at the inner base point. The remainder
// envelope is fitted to sampled (f - p)/|e|^n values and inflated, then kept
// as the certificate. radius bounds the envelope's reach and shrinks by
// itself when samples leave the expression's domain.
TaylorJet tjet_from_expr(const Expr& e, double x0, int n, double tol = 1e-9,
                         double radius = 0.5);

// alias used by the expression-facing surface
inline TaylorJet eval_tjet(const Expr& e, double x0, int n, double tol = 1e-9) {
    return tjet_from_expr(e, x0, n, tol);
}

using RealFun = std::function<double(double)>;

struct PeanoVerdict {
    bool pass = false;
    double fitC = 0.0;
    double fitp = 0.0;
    double witness_eps = 0.0;   // innermost usable sample
    double witness_ratio = 0.0; // |f - p| / |eps|^n there
    int used = 0;               // samples above the noise floor
};

// Check that (f(x0+e) - p(e))/|e|^n behaves like an error function: ratios
// above the noise floor must decay (fitted power > 0 and a real drop across
// the grid). eval_noise is the absolute error allowed per f evaluation.
PeanoVerdict verify_peano(const TaylorJet& tj, const RealFun& f,
                          double eval_noise = 1e-9);

enum class TjOp { Add, Sub, Mul };

// Coefficient arithmetic at matching base points; orders truncate to the
// smaller one and envelopes combine through the envelope algebra.
TaylorJet tjet_arith(const TaylorJet& a, const TaylorJet& b, TjOp op);

} // namespace epscalc
