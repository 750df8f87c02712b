#pragma once

#include <functional>
#include <vector>

#include "epscalc/envelope.hpp"

namespace epscalc {

// First-order data of f at x0 realizing
//   f(x0 + e) = value + slope*e + |e|*E(e),   |e| <= env.r
// The envelope is the certified dominator of E; env.r is the working radius
// the construction ended up with after every shrink it needed.
struct Jet1 {
    double x0 = 0.0;
    double value = 0.0;
    double slope = 0.0;
    ErrorEnvelope env = ErrorEnvelope::zero();
};

// Zeroth-order variant: the envelope bounds the increment directly,
// |f(x0+e) - value| <= C|e|^p, a certified modulus of continuity. Used for
// continuity envelopes (FTC integrand).
struct Jet0 {
    double x0 = 0.0;
    double value = 0.0;
    ErrorEnvelope env = ErrorEnvelope::zero();
};

// |f| on the working radius, straight from the jet's own contract.
double sup_bound(const Jet1& j);

Jet1 jet_const(double c, double x0);
Jet1 jet_var(double x0);

Jet1 jet_add(const Jet1& a, const Jet1& b);
Jet1 jet_sub(const Jet1& a, const Jet1& b);
Jet1 jet_mul(const Jet1& a, const Jet1& b);
Jet1 jet_recip(const Jet1& a);               // needs |value| > 0
Jet1 jet_div(const Jet1& a, const Jet1& b);
Jet1 jet_chain(const Jet1& outer, const Jet1& inner); // outer.x0 == inner.value
Jet1 jet_inverse(const Jet1& f_at_y0);       // needs slope != 0; jet of the inverse at f(y0)
Jet1 jet_monomial(int n, double x0);         // x^n, n >= 1
Jet1 jet_rational_power(long long num, long long den, double x0);

Jet0 jet0_from_jet1(const Jet1& j);

struct UniquenessResult {
    bool pass = true;
    double witness_eps = 0.0;
    double gap = 0.0;     // |slope_a - slope_b|
    double allowed = 0.0; // envelope bound sum at the witness
    explicit operator bool() const { return pass; }
};

// Two certified jets for the same function at the same point must carry the
// same slope: |a1 - a2| <= E1(e) + E2(e) for every e, which collapses the gap
// as e shrinks. Checked on a decreasing sequence (default r*2^-k, k=0..40).
UniquenessResult check_uniqueness(const Jet1& a, const Jet1& b,
                                  const std::vector<double>& eps_seq = {});

// Grid-samples the jet contract against a real evaluator. eval_noise is the
// additive slack allowed per sample (evaluation tolerance of f).
DominationResult certify_jet(const Jet1& j, const std::function<double(double)>& f,
                             int points_per_side = 2048, double eval_noise = 0.0);

} // namespace epscalc
