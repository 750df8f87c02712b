#include "epscalc/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "epscalc/geometry.hpp"

namespace epscalc {

namespace {

// golden-section refinement inside a scan bracket; returns the extremizer
double golden_extremum(const RealFun& f, double lo, double hi, bool maximize,
                       double wtol, int& iters) {
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    auto val = [&](double x) {
        double v = f(x);
        return maximize ? v : -v;
    };
    double f1 = val(x1), f2 = val(x2);
    int it = 0;
    while (hi - lo > wtol && it < 200) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = val(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = val(x1);
        }
        ++it;
    }
    iters += it + 2;
    return 0.5 * (lo + hi);
}

struct PowerFit {
    double C = 0.0; // least-squares intercept, exp scale
    double p = 0.0; // least-squares slope in log-log
    int used = 0;
};

// fit log(resid) = log C + p log(eps) over the samples that clear their noise
// floor; callers decide what to do with a thin fit
PowerFit fit_power_law(const std::vector<double>& eps, const std::vector<double>& resid,
                       const std::vector<double>& floors) {
    PowerFit out;
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(resid[i] > floors[i]) || !(resid[i] > 1e-290)) continue;
        double t = std::log(eps[i]);
        double y = std::log(resid[i]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++n;
    }
    out.used = n;
    if (n < 2) return out;
    double det = n * stt - st * st;
    if (det == 0.0) return out;
    out.p = (n * sty - st * sy) / det;
    out.C = std::exp((sy - out.p * st) / n);
    return out;
}

double clamp_exponent(double p) { return std::min(std::max(p, 0.01), 64.0); }

} // namespace

double ln_from_exp(double y, double tol) {
    if (!(y > 0.0) || !std::isfinite(y))
        throw DomainError("logarithm needs a positive finite argument");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (y == 1.0) return 0.0;
    if (y < 1.0) {
        double inv = 1.0 / y;
        if (!std::isfinite(inv))
            throw DomainError("argument too small to invert through exp");
        return -ln_from_exp(inv, tol);
    }
    // geo_exp(A) is the x whose reciprocal-curve area from 1 equals A, so its
    // inverse is that area read off directly: ln y = area(1..2m) + (e-1) area(1..2)
    // with y = m * 2^e, m in [0.5, 1)
    static const AreaBracket ln2 = sector_area(CurveId::SkewHyperbola, 2.0, 1e-14);
    int e2 = 0;
    double m = std::frexp(y, &e2);
    AreaBracket head = sector_area(CurveId::SkewHyperbola, 2.0 * m, 0.5 * tol);
    return head.mid() + double(e2 - 1) * ln2.mid();
}

Witness find_critical(const RealFun& f, const JetProvider& fj, double a, double b,
                      double tol) {
    if (!(b > a)) throw DomainError("search interval needs a < b");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    const int N = 1024;
    std::vector<double> xs(N), vs(N);
    for (int i = 0; i < N; ++i) {
        xs[i] = a + (b - a) * (double(i) / (N - 1));
        vs[i] = f(xs[i]);
        if (!std::isfinite(vs[i]))
            throw DomainError("function value is not finite inside the search interval");
    }
    int imax = 0, imin = 0;
    for (int i = 1; i < N; ++i) {
        if (vs[i] > vs[imax]) imax = i;
        if (vs[i] < vs[imin]) imin = i;
    }
    const double wtol = 1e-13 * std::max({1.0, std::fabs(a), std::fabs(b)});
    int iters = N;
    bool have = false;
    Witness best;
    for (auto [idx, maximize] : {std::pair<int, bool>{imax, true}, {imin, false}}) {
        if (idx <= 0 || idx >= N - 1) continue; // boundary extremum: no interior witness
        double c = golden_extremum(f, xs[idx - 1], xs[idx + 1], maximize, wtol, iters);
        // value comparisons bottom out near sqrt of the evaluation noise, so
        // polish by bisecting the slope's sign change when there is one
        double cell = 0.5 * (b - a) / double(N - 1);
        double plo = std::max(a, c - cell), phi = std::min(b, c + cell);
        double slo = fj(plo).slope, shi = fj(phi).slope;
        if (!maximize) {
            slo = -slo;
            shi = -shi;
        }
        iters += 2;
        if (slo > 0.0 && shi < 0.0) {
            int it = 0;
            while (phi - plo > 1e-16 * std::max(1.0, std::fabs(c)) && it < 120) {
                double mid = 0.5 * (plo + phi);
                if (mid <= plo || mid >= phi) break;
                double sm = fj(mid).slope;
                if (!maximize) sm = -sm;
                ++it;
                if (sm > 0.0)
                    plo = mid;
                else if (sm < 0.0)
                    phi = mid;
                else {
                    plo = phi = mid;
                    break;
                }
            }
            iters += it;
            c = 0.5 * (plo + phi);
        }
        double res = std::fabs(fj(c).slope);
        iters += 1;
        Witness w{c, res, iters, res <= tol};
        bool better = !have || (w.found && !best.found) ||
                      (w.found == best.found &&
                       (w.found ? w.c < best.c : w.residual < best.residual));
        if (better) best = w;
        have = true;
    }
    best.iterations = iters;
    if (!have) {
        // both extrema sat on the boundary; report the high end, unfound
        best.c = xs[imax];
        best.residual = std::fabs(fj(best.c).slope);
        best.iterations = iters + 1;
        best.found = false;
    }
    return best;
}

Witness mvt_witness(const RealFun& f, const JetProvider& fj, double a, double b,
                    double tol) {
    if (!(b > a)) throw DomainError("search interval needs a < b");
    const double secant = (f(b) - f(a)) / (b - a);
    RealFun h = [&f, secant](double x) { return f(x) - secant * x; };
    JetProvider hj = [&fj, secant](double x) {
        Jet1 j = fj(x);
        j.value -= secant * x;
        j.slope -= secant;
        return j;
    };
    Witness w = find_critical(h, hj, a, b, tol);
    if (!w.found) {
        // flat helper function: every interior point qualifies, try the middle
        double cm = 0.5 * (a + b);
        double res = std::fabs(fj(cm).slope - secant);
        if (res <= tol) return Witness{cm, res, w.iterations + 1, true};
    }
    return w;
}

Witness cmvt_witness(const RealFun& f, const RealFun& g, const JetProvider& fj,
                     const JetProvider& gj, double a, double b, double tol) {
    if (!(b > a)) throw DomainError("search interval needs a < b");
    // sampled guard on g' before anything else
    const int G = 257;
    std::vector<double> gs(G);
    double gmax = 0.0;
    for (int i = 0; i < G; ++i) {
        double x = a + (b - a) * (double(i + 1) / (G + 1));
        gs[i] = gj(x).slope;
        gmax = std::max(gmax, std::fabs(gs[i]));
    }
    for (int i = 0; i < G; ++i)
        if (std::fabs(gs[i]) <= 1e-12 * std::max(1.0, gmax))
            throw DomainError("denominator derivative vanishes on the guard grid");
    const double df = f(b) - f(a);
    const double dg = g(b) - g(a);
    if (std::fabs(dg) < 1e-300)
        throw DomainError("denominator increment is zero over the interval");
    RealFun h = [&f, &g, df, dg](double x) { return f(x) * dg - g(x) * df; };
    JetProvider hj = [&fj, &gj, df, dg](double x) {
        Jet1 jf = fj(x), jg = gj(x);
        Jet1 out = jf;
        out.value = jf.value * dg - jg.value * df;
        out.slope = jf.slope * dg - jg.slope * df;
        if (jf.env.is_analytic() && jg.env.is_analytic())
            out.env = env_sum(env_scale_bounded(jf.env, std::fabs(dg)),
                              env_scale_bounded(jg.env, std::fabs(df)));
        return out;
    };
    auto ratio_residual = [&](double c) {
        double gsl = gj(c).slope;
        if (gsl == 0.0) return std::numeric_limits<double>::infinity();
        return std::fabs(fj(c).slope / gsl - df / dg);
    };
    // the slope gate belongs to the ratio, not to h, so disarm it here
    Witness w = find_critical(h, hj, a, b, std::numeric_limits<double>::max());
    if (w.found) {
        w.residual = ratio_residual(w.c);
        w.found = w.residual <= tol;
    }
    if (!w.found) {
        double cm = 0.5 * (a + b);
        double res = ratio_residual(cm);
        if (res <= tol) return Witness{cm, res, w.iterations + 1, true};
    }
    return w;
}

LimitVerdict lhopital_00(const Jet1& fjet, const Jet1& gjet, const RealFun& f,
                         const RealFun& g, double eval_noise) {
    if (fjet.x0 != gjet.x0)
        throw DomainError("the two jets are anchored at different base points");
    if (std::fabs(fjet.value) > 1e-12 || std::fabs(gjet.value) > 1e-12)
        throw DomainError("0/0 form requires both values to vanish at the base point");
    if (gjet.slope == 0.0)
        throw DomainError(
            "denominator slope vanishes at the base point; use the sampled general form");
    if (!fjet.env.is_analytic() || !gjet.env.is_analytic())
        throw DomainError("ratio algebra needs analytic envelopes on both jets");
    const double fs = fjet.slope, gs = gjet.slope;
    const double L = fs / gs;

    // f(x0+e)/g(x0+e) = (fs + sgn(e) Ef)/(gs + sgn(e) Eg); once Eg <= |gs|/2 the
    // deviation from L is bounded by 2 (|gs| Ef + |fs| Eg) / gs^2
    double rr = std::min(fjet.env.r, gjet.env.r);
    int halvings = 0;
    while (gjet.env.bound(rr) > 0.5 * std::fabs(gs) && halvings < 200) {
        rr *= 0.5;
        ++halvings;
    }
    if (halvings >= 200)
        throw CertificationError("radius collapsed while taming the denominator envelope");
    ErrorEnvelope num = env_sum(env_scale_bounded(fjet.env, std::fabs(gs)),
                                env_scale_bounded(gjet.env, std::fabs(fs)));
    ErrorEnvelope scaled = env_scale_bounded(num, 2.0 / (gs * gs));
    ErrorEnvelope env = ErrorEnvelope::analytic(scaled.C, scaled.p, std::min(rr, scaled.r));

    LimitVerdict v;
    v.L = L;
    v.env = env;
    v.pass = true;
    const double x0 = fjet.x0;
    double inner_eps = std::numeric_limits<double>::infinity();
    for (double e : cert_grid(env.r, 256)) {
        if (e == 0.0) continue;
        double fv = f(x0 + e);
        double gv = g(x0 + e);
        if (!std::isfinite(fv) || !std::isfinite(gv) || gv == 0.0)
            throw CertificationError("ratio sample failed near the base point");
        double ratio = fv / gv;
        double resid = std::fabs(ratio - L);
        double noise = eval_noise * (1.0 + std::fabs(ratio)) / std::fabs(gv);
        double allowed = kCertSlack * env.bound(e) + 4.0 * noise;
        if (resid > allowed) {
            v.pass = false;
            v.domination = DominationResult{false, e, resid, allowed};
            break;
        }
        if (std::fabs(e) < inner_eps) {
            inner_eps = std::fabs(e);
            v.residual = resid;
        }
    }
    return v;
}

LimitVerdict lhopital_general(const RealFun& f, const RealFun& g,
                              const JetProvider& fjp, const JetProvider& gjp,
                              double x0, Side side, double claimed_L, double tol,
                              double radius, double eval_noise) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw DomainError("radius must be positive and finite");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (!(eval_noise >= 0.0)) throw DomainError("eval_noise must be nonnegative");
    const double sgn = side == Side::Right ? 1.0 : -1.0;
    const int K = 41;
    std::vector<double> eps(K), fv(K), gv(K), resid(K), floors(K);
    for (int k = 0; k < K; ++k) {
        eps[k] = std::ldexp(radius, -k);
        double x = x0 + sgn * eps[k];
        fv[k] = f(x);
        gv[k] = g(x);
        if (!std::isfinite(fv[k]) || !std::isfinite(gv[k]))
            throw DomainError("sample is not finite at epsilon=" + std::to_string(eps[k]));
        if (gv[k] == 0.0)
            throw DomainError("denominator vanishes at epsilon=" + std::to_string(eps[k]));
        double ratio = fv[k] / gv[k];
        resid[k] = std::fabs(ratio - claimed_L);
        floors[k] = 10.0 * eval_noise * (1.0 + std::fabs(ratio)) / std::fabs(gv[k]);
    }

    // admissible forms: both samples head to zero, or the denominator blows up
    // with 1/g behaving like an error function on the inner half of the grid
    bool zz = std::fabs(fv[K - 1]) <= 1e-5 && std::fabs(gv[K - 1]) <= 1e-5;
    bool unbounded = std::fabs(gv[K - 1]) >= 1e5;
    if (unbounded)
        for (int k = K / 2; k < K && unbounded; ++k)
            if (std::fabs(1.0 / gv[k]) > 1e-4) unbounded = false;
    if (!zz && !unbounded)
        throw DomainError(
            "not a vanishing ratio and the denominator stays bounded; nothing to take a limit of");

    LimitVerdict v;
    v.L = claimed_L;
    PowerFit fit = fit_power_law(eps, resid, floors);

    if (fit.used < 5) {
        // every sample is inside its noise floor (or identically L): accept if
        // the raw residuals are all negligible, refuse to fit otherwise
        double cworst = 0.0;
        for (int k = 0; k < K; ++k) {
            if (resid[k] > std::max(tol, floors[k]))
                throw CertificationError(
                    "residuals neither follow a power law nor stay within noise");
            cworst = std::max(cworst, resid[k] / eps[k]);
        }
        v.env = ErrorEnvelope::analytic(1.1 * cworst, 1.0, radius);
        v.residual = resid[K - 1];
        v.pass = true;
        return v;
    }

    double p = clamp_exponent(fit.p);
    double cmax = 0.0;
    for (int k = 0; k < K; ++k) {
        if (!(resid[k] > floors[k])) continue;
        cmax = std::max(cmax, resid[k] / std::pow(eps[k], p));
    }
    double Ccert = 1.1 * cmax;
    v.env = ErrorEnvelope::analytic(Ccert, p, radius);

    // fresh, denser sweep for the domination check
    const int M = 200;
    bool dominated = true;
    for (int j = 0; j <= M && dominated; ++j) {
        double e = radius * std::pow(2.0, -40.0 * j / M);
        double x = x0 + sgn * e;
        double fs = f(x), gs = g(x);
        if (!std::isfinite(fs) || !std::isfinite(gs) || gs == 0.0)
            throw DomainError("sample is not finite at epsilon=" + std::to_string(e));
        double ratio = fs / gs;
        double rres = std::fabs(ratio - claimed_L);
        double nz = eval_noise * (1.0 + std::fabs(ratio)) / std::fabs(gs);
        double allowed = kCertSlack * v.env.bound(e) + 4.0 * nz;
        if (rres > allowed) {
            dominated = false;
            v.domination = DominationResult{false, e, rres, allowed};
        }
    }

    bool converged = resid[K - 1] <= std::max(tol, 2.0 * floors[K - 1]);
    // report the tightest approach that still clears its noise floor
    v.residual = resid[K - 1];
    for (int k = K - 1; k >= 0; --k)
        if (resid[k] > floors[k]) {
            v.residual = resid[k];
            break;
        }
    v.pass = dominated && converged && fit.p >= 0.05;

    // optional derivative-ratio fit, reported as its own envelope
    if (fjp && gjp) {
        std::vector<double> de, dr, dfl;
        for (int k = 0; k < K; ++k) {
            double x = x0 + sgn * eps[k];
            Jet1 jf = fjp(x), jg = gjp(x);
            if (jg.slope == 0.0) continue;
            double ratio = jf.slope / jg.slope;
            double res = std::fabs(ratio - claimed_L);
            de.push_back(eps[k]);
            dr.push_back(res);
            dfl.push_back(10.0 * eval_noise * (1.0 + std::fabs(ratio)));
        }
        PowerFit dfit = fit_power_law(de, dr, dfl);
        if (dfit.used >= 5 && dfit.C > 0.0) {
            v.deriv_env = ErrorEnvelope::analytic(dfit.C, clamp_exponent(dfit.p), radius);
            v.has_deriv_env = true;
        }
    }
    return v;
}

} // namespace epscalc
