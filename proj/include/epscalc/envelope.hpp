#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "epscalc/errors.hpp"

namespace epscalc {

// E(e): defined near 0, E(0) = 0, made small by making e small. Analytic
// envelopes carry a certified normal-form bound C*|e|^p on |e| <= r.
// Empirical ones carry only a sampler and a radius; every claim about them
// goes through grid certification.
enum class EnvelopeKind { Analytic, Empirical };

using EnvSampler = std::function<double(double)>;

struct ErrorEnvelope {
    EnvelopeKind kind = EnvelopeKind::Analytic;
    double C = 0.0;   // analytic only
    double p = 1.0;   // analytic only, > 0
    double r = 1.0;   // working radius, > 0
    std::optional<EnvSampler> sampler; // required for empirical, optional cross-check otherwise

    static ErrorEnvelope analytic(double C, double p, double r);
    static ErrorEnvelope analytic_sampled(double C, double p, double r, EnvSampler s);
    static ErrorEnvelope empirical(EnvSampler s, double r);
    static ErrorEnvelope zero(double r = 1.0) { return analytic(0.0, 1.0, r); }

    bool is_analytic() const { return kind == EnvelopeKind::Analytic; }
    // C*|e|^p, valid for |e| <= r (analytic only)
    double bound(double eps) const;
};

// slack factor used by every grid comparison
inline constexpr double kCertSlack = 1.0 + 0x1p-20;

// Deterministic certification grid: 2048 magnitudes geometrically spaced from
// r down to r*2^-40, each mirrored in sign, plus 0. Size 4097.
std::vector<double> cert_grid(double r, int points_per_side = 2048);

struct DominationResult {
    bool pass = true;
    double witness_eps = 0.0;   // first violating epsilon when !pass
    double witness_value = 0.0; // sampled |E| there
    double witness_bound = 0.0; // allowed bound there
    explicit operator bool() const { return pass; }
};

// Closure rules. Sums and compositions clamp the radius to <= 1.
ErrorEnvelope env_sum(const ErrorEnvelope& a, const ErrorEnvelope& b);
ErrorEnvelope env_scale_bounded(const ErrorEnvelope& e, double M);
ErrorEnvelope env_compose(const ErrorEnvelope& outer, const ErrorEnvelope& inner);

// True iff `small`'s sampled values stay under `big`'s bound across the shared
// grid (with slack). Falsification, not proof: a pass certifies the grid only.
// NaN anywhere is a CertificationError carrying the offending epsilon.
DominationResult env_dominates(const ErrorEnvelope& big, const ErrorEnvelope& small);

struct FunnelBox {
    double x_lo, x_hi; // symmetric about 0
    double y_lo, y_hi;
};

// n boxes with heights y0, y0/2, ... and the widest x-window on which the
// envelope provably stays inside each height. Analytic widths invert the
// bound; empirical widths bisect over grid-verified candidates. When a
// sampler is present every box is re-verified by sampling (eval_noise is the
// additive slack allowed on samples near 0, see funnel verification).
std::vector<FunnelBox> funnel_boxes(const ErrorEnvelope& e, double y0, int n,
                                    double eval_noise = 0.0);

} // namespace epscalc
