#include "epscalc/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "epscalc/envelope.hpp"
#include "epscalc/errors.hpp"

namespace epscalc {
namespace {

// Pairwise accumulator: a binary-carry chain of partial sums, so the
// reduction tree is the same no matter how the panels are walked and equal
// summands combine exactly (powers of two are lossless).
struct PairwiseAcc {
    double lane[64];
    unsigned long long mask = 0;

    void add(double v) {
        int k = 0;
        while (mask & (1ull << k)) {
            v += lane[k];
            mask &= ~(1ull << k);
            ++k;
        }
        lane[k] = v;
        mask |= 1ull << k;
    }
    double total() const {
        double s = 0.0;
        for (int k = 0; k < 64; ++k)
            if (mask & (1ull << k)) s += lane[k];
        return s;
    }
};

struct SumPair {
    double lo, hi;
};

// endpoint min/max per panel: exact bounds on a monotone panel
SumPair sums_endpoint(const RealFun& f, double a, double h, long long n) {
    PairwiseAcc lo, hi;
    double fprev = f(a);
    for (long long i = 0; i < n; ++i) {
        double fv = f(a + double(i + 1) * h);
        lo.add(std::min(fprev, fv));
        hi.add(std::max(fprev, fv));
        fprev = fv;
    }
    return {lo.total() * h, hi.total() * h};
}

// sampled min/max per panel: five points, no monotonicity to lean on
SumPair sums_sampled(const RealFun& f, double a, double h, long long n) {
    PairwiseAcc lo, hi;
    double fprev = f(a);
    for (long long i = 0; i < n; ++i) {
        double x0 = a + double(i) * h;
        double mn = fprev, mx = fprev;
        for (int j = 1; j <= 4; ++j) {
            double fv = f(j == 4 ? a + double(i + 1) * h : x0 + 0.25 * j * h);
            mn = std::min(mn, fv);
            mx = std::max(mx, fv);
            if (j == 4) fprev = fv;
        }
        lo.add(mn);
        hi.add(mx);
    }
    return {lo.total() * h, hi.total() * h};
}

} // namespace

IntegralBracket integrate(const RealFun& f, double a, double b, double tol,
                          const std::vector<double>& breakpoints) {
    if (!(tol > 0.0)) throw DomainError("integration tolerance must be positive");

    IntegralBracket out;
    out.a = a;
    out.b = b;
    if (a == b) return out;

    bool flipped = b < a;
    double lo_end = flipped ? b : a, hi_end = flipped ? a : b;

    for (double bp : breakpoints)
        if (!(bp >= lo_end && bp <= hi_end))
            throw DomainError("breakpoint outside the integration interval");

    // Slope-sign scan: count alternations of the sampled difference signs.
    // Flat stretches are both-monotone and do not count. Too many turns at
    // this resolution means the monotone-segment story is not supportable.
    bool rigorous = true;
    if (breakpoints.empty()) {
        double h = (hi_end - lo_end) / 256.0;
        int last = 0, alternations = 0;
        double fprev = f(lo_end);
        for (int i = 1; i <= 256; ++i) {
            double fv = f(lo_end + i * h);
            int s = fv > fprev ? 1 : (fv < fprev ? -1 : 0);
            if (s != 0) {
                if (last != 0 && s != last) ++alternations;
                last = s;
            }
            fprev = fv;
        }
        rigorous = alternations <= 32;
    }

    const long long panel_cap = 1ll << 27;
    long long n = 256;
    SumPair sp{};
    for (;;) {
        double h = (hi_end - lo_end) / double(n);
        sp = rigorous ? sums_endpoint(f, lo_end, h, n)
                      : sums_sampled(f, lo_end, h, n);
        if (sp.hi - sp.lo <= tol || n >= panel_cap) break;
        n *= 2;
    }

    out.n_panels = n;
    out.rigorous = rigorous;
    if (flipped) {
        out.lo = -sp.hi;
        out.hi = -sp.lo;
    } else {
        out.lo = sp.lo;
        out.hi = sp.hi;
    }
    return out;
}

Jet1 ftc_jet(const RealFun& f, double x0_base, double x1, double tol) {
    IntegralBracket br = integrate(f, x0_base, x1, tol);

    Jet1 j;
    j.x0 = x1;
    j.value = br.mid();
    j.slope = f(x1);

    // Continuity envelope of f at x1, fitted to |f(x1+t) - f(x1)| with the
    // running maximum taken from the inside out so the fit dominates the
    // mean-of-E form the derivative error actually takes.
    double span = std::fabs(x1 - x0_base);
    double r = span > 0.0 ? 0.25 * span : 0.25;
    std::vector<double> mags, vals;
    for (double eps : cert_grid(r, 128)) {
        if (!(eps > 0.0)) continue; // one magnitude per pair, mirrored below
        double d = std::max(std::fabs(f(x1 + eps) - j.slope),
                            std::fabs(f(x1 - eps) - j.slope));
        mags.push_back(eps);
        vals.push_back(d);
    }
    // cert_grid runs outward-in; walk back-to-front for the running max
    double run = 0.0;
    std::vector<double> cummax(vals.size());
    for (size_t i = vals.size(); i-- > 0;) {
        run = std::max(run, vals[i]);
        cummax[i] = run;
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    double cmax_p1 = 0.0;
    for (size_t i = 0; i < mags.size(); ++i) {
        double floor = 1e-12 + 8.0 * 0x1p-52 * (1.0 + std::fabs(j.slope));
        if (!(cummax[i] > floor)) continue;
        double lx = std::log(mags[i]), ly = std::log(cummax[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++m;
        cmax_p1 = std::max(cmax_p1, cummax[i] / mags[i]);
    }
    ErrorEnvelope cont = ErrorEnvelope::zero(r);
    if (m >= 4) {
        double det = double(m) * sxx - sx * sx;
        double p = std::min(64.0, std::max(0.01, (double(m) * sxy - sx * sy) / det));
        double cmax = 0.0;
        for (size_t i = 0; i < mags.size(); ++i)
            cmax = std::max(cmax, cummax[i] / std::pow(mags[i], p));
        cont = ErrorEnvelope::analytic(1.1 * cmax, p, r);
    } else if (cmax_p1 > 0.0) {
        cont = ErrorEnvelope::analytic(1.1 * cmax_p1, 1.0, r);
    }

    // The value itself and every F sample used against this jet carry their
    // bracket widths. Fold them in as a barely-decaying term sized so that
    // width <= |e| * bound(e) down to 2^-20 of the span.
    double wtot = 0.5 * br.width() + 0.5 * tol;
    if (wtot > 0.0) {
        double eps_min = 0x1p-20 * (span > 0.0 ? span : 1.0);
        double cw = wtot / std::pow(eps_min, 1.01);
        cont = env_sum(cont, ErrorEnvelope::analytic(cw, 0.01, r));
    }
    j.env = cont;
    return j;
}

} // namespace epscalc
