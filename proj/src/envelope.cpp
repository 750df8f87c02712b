#include "epscalc/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epscalc {

static void check_radius(double r) {
    if (!(r > 0.0) || std::isnan(r)) throw DomainError("envelope radius must be > 0");
}

ErrorEnvelope ErrorEnvelope::analytic(double C, double p, double r) {
    if (!(C >= 0.0)) throw DomainError("envelope C must be >= 0");
    if (!(p > 0.0)) throw DomainError("envelope exponent p must be > 0");
    check_radius(r);
    ErrorEnvelope e;
    e.kind = EnvelopeKind::Analytic;
    e.C = C;
    e.p = p;
    e.r = r;
    return e;
}

ErrorEnvelope ErrorEnvelope::analytic_sampled(double C, double p, double r, EnvSampler s) {
    ErrorEnvelope e = analytic(C, p, r);
    e.sampler = std::move(s);
    return e;
}

ErrorEnvelope ErrorEnvelope::empirical(EnvSampler s, double r) {
    check_radius(r);
    ErrorEnvelope e;
    e.kind = EnvelopeKind::Empirical;
    e.r = r;
    e.sampler = std::move(s);
    return e;
}

double ErrorEnvelope::bound(double eps) const {
    if (kind != EnvelopeKind::Analytic)
        throw DomainError("empirical envelope has no closed-form bound");
    if (C == 0.0) return 0.0;
    return C * std::pow(std::fabs(eps), p);
}

std::vector<double> cert_grid(double r, int points_per_side) {
    check_radius(r);
    std::vector<double> g;
    g.reserve(2 * points_per_side + 1);
    g.push_back(0.0);
    const double span = 40.0; // magnitudes r*2^0 .. r*2^-40
    for (int j = 0; j < points_per_side; ++j) {
        double mag = r * std::exp2(-span * double(j) / double(points_per_side - 1));
        g.push_back(mag);
        g.push_back(-mag);
    }
    return g;
}

ErrorEnvelope env_sum(const ErrorEnvelope& a, const ErrorEnvelope& b) {
    if (!a.is_analytic() || !b.is_analytic())
        throw CertificationError("env_sum needs analytic operands; certify a dominator first");
    double r = std::min({a.r, b.r, 1.0});
    if (a.C == 0.0) { ErrorEnvelope e = b; e.r = r; e.sampler.reset(); return e; }
    if (b.C == 0.0) { ErrorEnvelope e = a; e.r = r; e.sampler.reset(); return e; }
    return ErrorEnvelope::analytic(a.C + b.C, std::min(a.p, b.p), r);
}

ErrorEnvelope env_scale_bounded(const ErrorEnvelope& e, double M) {
    if (!(M >= 0.0) || std::isnan(M)) throw DomainError("scale bound M must be >= 0");
    if (!e.is_analytic())
        throw CertificationError("env_scale_bounded needs an analytic operand");
    return ErrorEnvelope::analytic(e.C * M, e.p, e.r);
}

ErrorEnvelope env_compose(const ErrorEnvelope& outer, const ErrorEnvelope& inner) {
    if (!outer.is_analytic())
        throw CertificationError("env_compose: outer envelope must be analytic");
    if (!inner.is_analytic())
        throw CertificationError(
            "env_compose: empirical inner envelope; certify an analytic dominator first");
    // inner range must land inside the outer's validity radius
    double r = std::min(inner.r, 1.0);
    if (inner.C > 0.0) {
        int guard = 0;
        while (inner.C * std::pow(r, inner.p) > outer.r) {
            r *= 0.5;
            if (++guard > 2000)
                throw CertificationError("env_compose: radius collapsed to zero");
        }
    }
    double C = outer.C * std::pow(inner.C, outer.p);
    return ErrorEnvelope::analytic(C, outer.p * inner.p, r);
}

static double sample_abs(const ErrorEnvelope& e, double eps) {
    double v;
    if (e.sampler)
        v = (*e.sampler)(eps);
    else
        v = e.bound(eps);
    if (std::isnan(v))
        throw CertificationError("envelope sample is NaN at eps=" + std::to_string(eps));
    return std::fabs(v);
}

DominationResult env_dominates(const ErrorEnvelope& big, const ErrorEnvelope& small) {
    if (!big.is_analytic())
        throw CertificationError("env_dominates: dominating envelope must be analytic");
    double r = std::min(big.r, small.r);
    for (double eps : cert_grid(r)) {
        double v = sample_abs(small, eps);
        double allowed = eps == 0.0 ? 0.0 : big.bound(eps) * kCertSlack;
        if (v > allowed) return {false, eps, v, allowed};
    }
    return {};
}

static bool box_holds(const ErrorEnvelope& e, double w, double y, double eval_noise) {
    for (double eps : cert_grid(w)) {
        if (eps == 0.0) continue; // E(0) = 0 by definition
        double v = sample_abs(e, eps);
        if (v > y * kCertSlack + eval_noise) return false;
    }
    return true;
}

std::vector<FunnelBox> funnel_boxes(const ErrorEnvelope& e, double y0, int n,
                                    double eval_noise) {
    if (!(y0 > 0.0)) throw DomainError("funnel y0 must be > 0");
    if (n < 1) throw DomainError("funnel needs n >= 1 boxes");
    std::vector<FunnelBox> boxes;
    boxes.reserve(n);
    double y = y0;
    for (int k = 0; k < n; ++k, y *= 0.5) {
        double w;
        if (e.is_analytic()) {
            if (e.C == 0.0) {
                w = e.r;
            } else {
                w = std::pow(y / e.C, 1.0 / e.p);
                if (w > e.r) w = e.r;
            }
        } else {
            // widest verified width by bisection
            if (box_holds(e, e.r, y, eval_noise)) {
                w = e.r;
            } else {
                double lo = 0.0, hi = e.r;
                for (int it = 0; it < 80 && hi - lo > 1e-16 * e.r; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (mid == lo || mid == hi) break;
                    if (box_holds(e, mid, y, eval_noise))
                        lo = mid;
                    else
                        hi = mid;
                }
                w = lo;
                if (!(w > 0.0))
                    throw CertificationError("funnel: no verifiable width for height " +
                                             std::to_string(y));
            }
        }
        if (e.sampler && e.is_analytic()) {
            // analytic width cross-checked against the true samples
            for (double eps : cert_grid(w)) {
                if (eps == 0.0) continue;
                double v = sample_abs(e, eps);
                if (v > y * kCertSlack + eval_noise)
                    throw CertificationError("funnel box verification failed at eps=" +
                                             std::to_string(eps) + " where |E|=" +
                                             std::to_string(v) + " > " + std::to_string(y));
            }
        }
        boxes.push_back({-w, w, -y, y});
    }
    return boxes;
}

} // namespace epscalc
