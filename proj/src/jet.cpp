#include "epscalc/jet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace epscalc {

static ErrorEnvelope env_with_radius(const ErrorEnvelope& e, double r) {
    ErrorEnvelope out = ErrorEnvelope::analytic(e.C, e.p, std::min(e.r, r));
    return out;
}

static void need_same_base(const Jet1& a, const Jet1& b, const char* op) {
    if (a.x0 != b.x0)
        throw DomainError(std::string(op) + ": jets have different base points");
}

double sup_bound(const Jet1& j) {
    return std::fabs(j.value) + std::fabs(j.slope) * j.env.r + j.env.bound(j.env.r);
}

Jet1 jet_const(double c, double x0) {
    return {x0, c, 0.0, ErrorEnvelope::zero()};
}

Jet1 jet_var(double x0) {
    return {x0, x0, 1.0, ErrorEnvelope::zero()};
}

Jet1 jet_add(const Jet1& a, const Jet1& b) {
    need_same_base(a, b, "jet_add");
    return {a.x0, a.value + b.value, a.slope + b.slope, env_sum(a.env, b.env)};
}

Jet1 jet_sub(const Jet1& a, const Jet1& b) {
    need_same_base(a, b, "jet_sub");
    return {a.x0, a.value - b.value, a.slope - b.slope, env_sum(a.env, b.env)};
}

Jet1 jet_mul(const Jet1& a, const Jet1& b) {
    need_same_base(a, b, "jet_mul");
    double r = std::min({a.env.r, b.env.r, 1.0});
    Jet1 ar = a, br = b;
    ar.env = env_with_radius(a.env, r);
    br.env = env_with_radius(b.env, r);
    // f*g = va*vb + (sa*vb + va*sb) e + |e| * [ E_a * (g near x0) + (f near x0) * E_b
    //       + sgn(e) * sa*sb * e ]
    ErrorEnvelope cross = ErrorEnvelope::analytic(std::fabs(a.slope * b.slope), 1.0, r);
    ErrorEnvelope e = env_sum(env_sum(env_scale_bounded(ar.env, sup_bound(br)),
                                      env_scale_bounded(br.env, sup_bound(ar))),
                              cross);
    return {a.x0, a.value * b.value, a.slope * b.value + a.value * b.slope, e};
}

Jet1 jet_recip(const Jet1& a) {
    if (!(std::fabs(a.value) > 0.0))
        throw DomainError("jet_recip: value is zero at the base point");
    double va = a.value;
    // shrink until |f| >= |va|/2 on the radius
    double r = std::min(a.env.r, 1.0);
    int guard = 0;
    while (std::fabs(a.slope) * r + a.env.bound(r) > 0.5 * std::fabs(va)) {
        r *= 0.5;
        if (++guard > 2000)
            throw CertificationError("jet_recip: working radius collapsed");
    }
    ErrorEnvelope ea = env_with_radius(a.env, r);
    // |delta| <= |e| * S with S = |slope| + C r^p
    double S = std::fabs(a.slope) + ea.C * std::pow(r, ea.p);
    double va2 = va * va;
    ErrorEnvelope tail = ErrorEnvelope::analytic(2.0 * S * S / (va2 * std::fabs(va)), 1.0, r);
    ErrorEnvelope e = env_sum(env_scale_bounded(ea, 1.0 / va2), tail);
    return {a.x0, 1.0 / va, -a.slope / va2, e};
}

Jet1 jet_div(const Jet1& a, const Jet1& b) {
    need_same_base(a, b, "jet_div");
    return jet_mul(a, jet_recip(b));
}

Jet1 jet_chain(const Jet1& outer, const Jet1& inner) {
    if (outer.x0 != inner.value)
        throw DomainError("jet_chain: outer base point must equal inner value");
    double r = std::min(inner.env.r, 1.0);
    // |e~| <= K |e|
    double K = std::fabs(inner.slope) + inner.env.C * std::pow(r, inner.env.p);
    ErrorEnvelope transported;
    if (K == 0.0) {
        transported = ErrorEnvelope::zero(r);
    } else {
        ErrorEnvelope mag = ErrorEnvelope::analytic(K, 1.0, r);
        transported = env_scale_bounded(env_compose(outer.env, mag), K);
    }
    ErrorEnvelope e = env_sum(env_scale_bounded(env_with_radius(inner.env, r),
                                                std::fabs(outer.slope)),
                              transported);
    return {inner.x0, outer.value, outer.slope * inner.slope, e};
}

Jet1 jet_inverse(const Jet1& f) {
    double s = f.slope;
    if (!(std::fabs(s) > 0.0))
        throw DomainError("jet_inverse: slope is zero, not locally invertible");
    // shrink the source radius until the envelope term stays under |s|/2
    double rd = std::min(f.env.r, 1.0);
    int guard = 0;
    while (f.env.bound(rd) > 0.5 * std::fabs(s)) {
        rd *= 0.5;
        if (++guard > 2000)
            throw CertificationError("jet_inverse: working radius collapsed");
    }
    double re = 0.5 * std::fabs(s) * rd; // radius in the image variable
    double C = f.env.C == 0.0
                   ? 0.0
                   : f.env.C * std::pow(2.0 / std::fabs(s), f.env.p + 1.0) / std::fabs(s);
    ErrorEnvelope e = C == 0.0 ? ErrorEnvelope::zero(std::min(re, 1.0))
                               : ErrorEnvelope::analytic(C, f.env.p, std::min(re, 1.0));
    return {f.value, f.x0, 1.0 / s, e};
}

Jet1 jet_monomial(int n, double x0) {
    if (n < 1) throw DomainError("jet_monomial: exponent must be >= 1");
    double value = 1.0, slope_pow = 1.0;
    for (int i = 0; i < n; ++i) value *= x0;
    for (int i = 0; i < n - 1; ++i) slope_pow *= x0;
    double slope = double(n) * slope_pow;
    // remainder sum_{k>=2} C(n,k) x0^{n-k} e^k, bounded on r = 1
    const double r = 1.0;
    double C = 0.0;
    double binom = 1.0;
    double ax = std::fabs(x0);
    for (int k = 1; k <= n; ++k) {
        binom = binom * double(n - k + 1) / double(k);
        if (k < 2) continue;
        double t = binom;
        for (int i = 0; i < n - k; ++i) t *= ax;
        // r^(k-2) with r = 1 contributes nothing
        C += t;
    }
    ErrorEnvelope e = C == 0.0 ? ErrorEnvelope::zero(r) : ErrorEnvelope::analytic(C, 1.0, r);
    return {x0, value, slope, e};
}

static double nth_root(double x, long long den) {
    // Newton on t^den = x, seeded from above; x > 0
    if (den == 1) return x;
    double t = x >= 1.0 ? x : 1.0; // t >= x^(1/den)
    for (int it = 0; it < 400; ++it) {
        double tp = 1.0;
        for (long long i = 0; i + 1 < den; ++i) tp *= t;
        double next = t - (tp * t - x) / (double(den) * tp);
        if (!(next > 0.0) || next == t) break;
        if (std::fabs(next - t) < 1e-15 * t) { t = next; break; }
        t = next;
    }
    return t;
}

Jet1 jet_rational_power(long long num, long long den, double x0) {
    if (den == 0) throw DomainError("jet_rational_power: zero denominator");
    if (den < 0) { den = -den; num = -num; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (den > 1 && !(x0 > 0.0))
        throw DomainError("jet_rational_power: fractional power needs x0 > 0");
    if (num == 0) return jet_const(1.0, x0);
    if (den == 1) {
        if (num > 0) return jet_monomial(int(num), x0);
        if (!(std::fabs(x0) > 0.0))
            throw DomainError("jet_rational_power: negative power at zero");
        return jet_recip(jet_monomial(int(-num), x0));
    }
    // x^(num/den) = (x^(1/den))^num, with the root jet built by inverting t^den
    double u = nth_root(x0, den);
    Jet1 root = jet_inverse(jet_monomial(int(den), u));
    root.x0 = x0; // u^den == x0 up to rounding; pin the requested base point
    long long m = num < 0 ? -num : num;
    Jet1 out = m == 1 ? root : jet_chain(jet_monomial(int(m), u), root);
    if (num < 0) out = jet_recip(out);
    return out;
}

Jet0 jet0_from_jet1(const Jet1& j) {
    // |f(x0+e) - f(x0)| <= |slope||e| + |e| E(e) <= |e| (|slope| + C r^p)
    double C = std::fabs(j.slope) + j.env.bound(j.env.r);
    ErrorEnvelope e = C == 0.0 ? ErrorEnvelope::zero(j.env.r)
                               : ErrorEnvelope::analytic(C, 1.0, j.env.r);
    return {j.x0, j.value, e};
}

UniquenessResult check_uniqueness(const Jet1& a, const Jet1& b,
                                  const std::vector<double>& eps_seq) {
    need_same_base(a, b, "check_uniqueness");
    double vscale = std::max({1.0, std::fabs(a.value), std::fabs(b.value)});
    if (std::fabs(a.value - b.value) > 1e-12 * vscale)
        return {false, 0.0, std::fabs(a.value - b.value), 1e-12 * vscale};
    double gap = std::fabs(a.slope - b.slope);
    std::vector<double> seq = eps_seq;
    if (seq.empty()) {
        double r = std::min(a.env.r, b.env.r);
        for (int k = 0; k <= 40; ++k) seq.push_back(r * std::exp2(-double(k)));
    }
    for (double eps : seq) {
        double allowed = (a.env.bound(eps) + b.env.bound(eps)) * kCertSlack;
        if (gap > allowed) return {false, eps, gap, allowed};
    }
    return {true, 0.0, gap, 0.0};
}

DominationResult certify_jet(const Jet1& j, const std::function<double(double)>& f,
                             int points_per_side, double eval_noise) {
    for (double eps : cert_grid(j.env.r, points_per_side)) {
        double fx = f(j.x0 + eps);
        if (std::isnan(fx))
            throw CertificationError("jet certification: f is NaN at eps=" +
                                     std::to_string(eps));
        double lhs = std::fabs(fx - j.value - j.slope * eps);
        double rhs = std::fabs(eps) * j.env.bound(eps) * kCertSlack + eval_noise;
        if (lhs > rhs) return {false, eps, lhs, rhs};
    }
    return {};
}

} // namespace epscalc
