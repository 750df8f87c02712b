#include "epscalc/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "epscalc/errors.hpp"
#include "epscalc/eval.hpp"
#include "epscalc/geometry.hpp"
#include "epscalc/jet.hpp"
#include "epscalc/meanvalue.hpp"

namespace epscalc {
namespace {

// truncated power series around a fixed point, coefficients c_0..c_n
using Series = std::vector<double>;

[[noreturn]] void fail_at(const ExprNode& n, const std::string& what) {
    throw DomainError(what + " (near byte " + std::to_string(n.src_offset) + ")");
}

Series s_zero(int n) { return Series(size_t(n) + 1, 0.0); }

Series s_add(const Series& a, const Series& b) {
    Series c(a.size());
    for (size_t k = 0; k < a.size(); ++k) c[k] = a[k] + b[k];
    return c;
}

Series s_sub(const Series& a, const Series& b) {
    Series c(a.size());
    for (size_t k = 0; k < a.size(); ++k) c[k] = a[k] - b[k];
    return c;
}

Series s_neg(const Series& a) {
    Series c(a.size());
    for (size_t k = 0; k < a.size(); ++k) c[k] = -a[k];
    return c;
}

// Cauchy product, truncated to the common order
Series s_mul(const Series& a, const Series& b) {
    Series c(a.size(), 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

// long division: c with a = b*c, needs b[0] != 0
Series s_div(const Series& a, const Series& b, const ExprNode& where) {
    if (b[0] == 0.0) fail_at(where, "series division needs a nonzero constant term");
    Series c(a.size(), 0.0);
    for (size_t k = 0; k < a.size(); ++k) {
        double acc = a[k];
        for (size_t j = 1; j <= k; ++j) acc -= b[j] * c[k - j];
        c[k] = acc / b[0];
    }
    return c;
}

// outer(dev) by Horner over series; dev must have zero constant term so the
// composition stays a polynomial identity at this order
Series s_compose(const Series& outer, const Series& dev) {
    Series res(outer.size(), 0.0);
    res[0] = outer[outer.size() - 1];
    for (size_t k = outer.size() - 1; k-- > 0;) {
        res = s_mul(res, dev);
        res[0] += outer[k];
    }
    return res;
}

Series s_int_pow(Series base, long long m, int n, const ExprNode& where) {
    Series acc = s_zero(n);
    acc[0] = 1.0;
    if (m == 0) return acc;
    bool invert = m < 0;
    unsigned long long e = invert ? -(unsigned long long)m : (unsigned long long)m;
    while (e) {
        if (e & 1ull) acc = s_mul(acc, base);
        e >>= 1;
        if (e) base = s_mul(base, base);
    }
    if (invert) {
        Series one = s_zero(n);
        one[0] = 1.0;
        acc = s_div(one, acc, where);
    }
    return acc;
}

// ---- primitive series, seeded from the curve kernels -----------------------
//
// Each entry is f^(k)(u)/k!. The derivative values come straight from the
// area-solved pairs: the circle pair cycles through (sin, cos, -sin, -cos),
// the hyperbola pair alternates, exp reproduces itself, and ln/sqrt/powers
// follow their one-step recurrences. Nothing here consults libm for values.

Series prim_cycle4(double d0, double d1, double d2, double d3, int n) {
    Series c(size_t(n) + 1, 0.0);
    double fact = 1.0;
    const double d[4] = {d0, d1, d2, d3};
    for (int k = 0; k <= n; ++k) {
        if (k > 0) fact *= k;
        c[size_t(k)] = d[k & 3] / fact;
    }
    return c;
}

Series prim_exp(double u, int n, double tol) {
    double eu = geo_exp(u, tol);
    Series c(size_t(n) + 1, 0.0);
    double fact = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) fact *= k;
        c[size_t(k)] = eu / fact;
    }
    return c;
}

Series prim_ln(double u, int n, double tol, const ExprNode& where) {
    if (!(u > 0.0)) fail_at(where, "ln of a nonpositive value");
    Series c(size_t(n) + 1, 0.0);
    c[0] = ln_from_exp(u, std::min(tol, 1e-12));
    double upow = 1.0;
    for (int k = 1; k <= n; ++k) {
        upow *= u;
        c[size_t(k)] = ((k & 1) ? 1.0 : -1.0) / (double(k) * upow);
    }
    return c;
}

// u^alpha with alpha = num/den (den > 1 here); c_k = c_{k-1}*(alpha-k+1)/(k*u)
Series prim_rational_pow(double u, long long num, long long den, int n,
                         const ExprNode& where) {
    if (!(u > 0.0)) fail_at(where, "fractional power of a nonpositive value");
    Series c(size_t(n) + 1, 0.0);
    c[0] = jet_rational_power(num, den, u).value;
    const double alpha = double(num) / double(den);
    for (int k = 1; k <= n; ++k)
        c[size_t(k)] = c[size_t(k - 1)] * (alpha - double(k - 1)) / (double(k) * u);
    return c;
}

Series series_walk(const Expr& e, double x0, int n, double tol) {
    const ExprNode& nd = *e;
    switch (nd.kind) {
    case ExprKind::Constant: {
        Series c = s_zero(n);
        c[0] = nd.constant;
        return c;
    }
    case ExprKind::Variable: {
        Series c = s_zero(n);
        c[0] = x0;
        c[1] = 1.0;
        return c;
    }
    case ExprKind::Neg:
        return s_neg(series_walk(nd.a, x0, n, tol));
    case ExprKind::Add:
        return s_add(series_walk(nd.a, x0, n, tol), series_walk(nd.b, x0, n, tol));
    case ExprKind::Sub:
        return s_sub(series_walk(nd.a, x0, n, tol), series_walk(nd.b, x0, n, tol));
    case ExprKind::Mul:
        return s_mul(series_walk(nd.a, x0, n, tol), series_walk(nd.b, x0, n, tol));
    case ExprKind::Div:
        return s_div(series_walk(nd.a, x0, n, tol), series_walk(nd.b, x0, n, tol), nd);
    case ExprKind::Pow: {
        Series base = series_walk(nd.a, x0, n, tol);
        if (nd.pow_den == 1) return s_int_pow(base, nd.pow_num, n, nd);
        double u = base[0];
        Series outer = prim_rational_pow(u, nd.pow_num, nd.pow_den, n, nd);
        Series dev = base;
        dev[0] = 0.0;
        return s_compose(outer, dev);
    }
    case ExprKind::Call: {
        Series inner = series_walk(nd.a, x0, n, tol);
        double u = inner[0];
        Series outer;
        switch (nd.call) {
        case CallName::Sin: {
            PairValue cs = geo_cos_sin(u, tol);
            outer = prim_cycle4(cs.second, cs.first, -cs.second, -cs.first, n);
            break;
        }
        case CallName::Cos: {
            PairValue cs = geo_cos_sin(u, tol);
            outer = prim_cycle4(cs.first, -cs.second, -cs.first, cs.second, n);
            break;
        }
        case CallName::Sinh: {
            PairValue hp = geo_cosh_sinh(u, tol);
            outer = prim_cycle4(hp.second, hp.first, hp.second, hp.first, n);
            break;
        }
        case CallName::Cosh: {
            PairValue hp = geo_cosh_sinh(u, tol);
            outer = prim_cycle4(hp.first, hp.second, hp.first, hp.second, n);
            break;
        }
        case CallName::Exp:
            outer = prim_exp(u, n, tol);
            break;
        case CallName::Ln:
            outer = prim_ln(u, n, tol, nd);
            break;
        case CallName::Sqrt:
            outer = prim_rational_pow(u, 1, 2, n, nd);
            break;
        case CallName::Abs: {
            if (u == 0.0) fail_at(nd, "abs is not smooth at 0");
            outer = s_zero(n);
            outer[0] = std::fabs(u);
            outer[1] = u > 0.0 ? 1.0 : -1.0;
            break;
        }
        }
        Series dev = inner;
        dev[0] = 0.0;
        return s_compose(outer, dev);
    }
    }
    throw DomainError("unreachable expression kind");
}

double poly_abs_sum(const Series& c, double r) {
    double acc = 0.0, rp = 1.0;
    for (double ck : c) {
        acc += std::fabs(ck) * rp;
        rp *= r;
    }
    return acc;
}

struct RatioFit {
    double C = 0.0;
    double p = 1.0;
    int used = 0;
};

double clamp_exponent(double p) { return std::min(64.0, std::max(0.01, p)); }

// least squares in log-log over the samples that clear their noise floors
RatioFit fit_ratios(const std::vector<double>& eps, const std::vector<double>& ratio,
                    const std::vector<double>& floor) {
    RatioFit out;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t i = 0; i < eps.size(); ++i) {
        if (!(ratio[i] > floor[i])) continue;
        double lx = std::log(std::fabs(eps[i]));
        double ly = std::log(ratio[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++m;
    }
    out.used = m;
    if (m < 4) return out;
    double det = double(m) * sxx - sx * sx;
    out.p = clamp_exponent((double(m) * sxy - sx * sy) / det);
    double cmax = 0.0;
    for (size_t i = 0; i < eps.size(); ++i) {
        if (!(ratio[i] > floor[i])) continue;
        cmax = std::max(cmax, ratio[i] / std::pow(std::fabs(eps[i]), out.p));
    }
    out.C = cmax;
    return out;
}

} // namespace

double tjet_poly(const TaylorJet& tj, double eps) {
    double acc = 0.0;
    for (size_t k = tj.coeffs.size(); k-- > 0;)
        acc = acc * eps + tj.coeffs[k];
    return acc;
}

TaylorJet tjet_from_expr(const Expr& e, double x0, int n, double tol, double radius) {
    if (n < 1) throw DomainError("polynomial order must be at least 1");
    if (!(radius > 0.0) || radius > 1.0) throw DomainError("radius must lie in (0, 1]");

    TaylorJet tj;
    tj.x0 = x0;
    tj.order = n;
    tj.coeffs = series_walk(e, x0, n, tol);

    // Certify the remainder the only honest way available: sample
    // (f(x0+eps) - p(eps)) / |eps|^n on the standard grid, fit a power law to
    // what clears the noise floor, inflate, and keep that as the envelope.
    // The radius backs off when samples step outside the expression's domain
    // (ln and roots near their edge).
    double r = radius;
    std::vector<double> eps_s, ratio_s, floor_s;
    for (int attempt = 0;; ++attempt) {
        eps_s.clear(); ratio_s.clear(); floor_s.clear();
        bool ok = true;
        for (double eps : cert_grid(r, 128)) {
            if (eps == 0.0) continue;
            double fv;
            try {
                fv = eval_value(e, x0 + eps, tol);
            } catch (const DomainError&) {
                ok = false;
                break;
            }
            double pv = tjet_poly(tj, eps);
            double an = std::pow(std::fabs(eps), double(n));
            double noise = 2.0 * tol + 1e-13 * (1.0 + std::fabs(fv) + std::fabs(pv));
            eps_s.push_back(eps);
            ratio_s.push_back(std::fabs(fv - pv) / an);
            floor_s.push_back(noise / an);
        }
        if (ok) break;
        if (attempt == 8)
            throw DomainError("expression leaves its domain arbitrarily close to the base point");
        r *= 0.5;
    }

    RatioFit fit = fit_ratios(eps_s, ratio_s, floor_s);
    if (fit.used < 4) {
        // remainder indistinguishable from evaluation noise: polynomial case
        tj.env = ErrorEnvelope::zero(r);
        return tj;
    }
    tj.env = ErrorEnvelope::analytic(1.1 * fit.C, fit.p, r);
    return tj;
}

PeanoVerdict verify_peano(const TaylorJet& tj, const RealFun& f, double eval_noise) {
    PeanoVerdict v;
    const int n = tj.order;
    const double r = tj.env.r > 0.0 ? tj.env.r : 0.5;

    std::vector<double> eps_s, ratio_s, floor_s;
    for (int k = 0; k <= 40; ++k) {
        double mag = r * std::pow(2.0, -k / 4.0);
        for (double eps : {mag, -mag}) {
            double fv = f(tj.x0 + eps);
            double pv = tjet_poly(tj, eps);
            double an = std::pow(mag, double(n));
            double noise = 2.0 * eval_noise + 1e-13 * (1.0 + std::fabs(fv) + std::fabs(pv));
            eps_s.push_back(eps);
            ratio_s.push_back(std::fabs(fv - pv) / an);
            floor_s.push_back(noise / an);
        }
    }

    // innermost sample that still clears its floor, for the report
    double wit_eps = eps_s.back(), wit_ratio = ratio_s.back();
    double best_mag = HUGE_VAL;
    for (size_t i = 0; i < eps_s.size(); ++i) {
        if (!(ratio_s[i] > floor_s[i])) continue;
        if (std::fabs(eps_s[i]) < best_mag) {
            best_mag = std::fabs(eps_s[i]);
            wit_eps = eps_s[i];
            wit_ratio = ratio_s[i];
        }
    }
    v.witness_eps = wit_eps;
    v.witness_ratio = wit_ratio;

    RatioFit fit = fit_ratios(eps_s, ratio_s, floor_s);
    v.used = fit.used;
    v.fitC = fit.C;
    v.fitp = fit.used >= 4 ? fit.p : 0.0;

    if (fit.used < 4) {
        // everything at noise level: nothing contradicts the model
        v.pass = true;
        return v;
    }

    // must decay: a visible fitted power and a real drop from the outer to
    // the inner end of the usable band
    double rmax = 0.0, rmin = HUGE_VAL;
    for (size_t i = 0; i < eps_s.size(); ++i) {
        if (!(ratio_s[i] > floor_s[i])) continue;
        rmax = std::max(rmax, ratio_s[i]);
        rmin = std::min(rmin, ratio_s[i]);
    }
    v.pass = v.fitp >= 0.05 && (rmin <= 0.25 * rmax || wit_ratio <= floor_s.back());
    return v;
}

TaylorJet tjet_arith(const TaylorJet& a, const TaylorJet& b, TjOp op) {
    if (std::fabs(a.x0 - b.x0) > 1e-12 * std::max(1.0, std::fabs(a.x0)))
        throw DomainError("TaylorJet arithmetic needs matching base points");

    const int n = std::min(a.order, b.order);
    const double r = std::min(a.env.r, b.env.r);

    // truncating a jet to a lower order folds the dropped coefficients into
    // the envelope: |eps|^{na} E + |tail| <= |eps|^n (|eps|^{na-n} E + |eps| T)
    auto truncate_env = [&](const TaylorJet& t) {
        ErrorEnvelope env = t.env;
        if (env.is_analytic() && t.order > n)
            env = ErrorEnvelope::analytic(env.C, env.p + double(t.order - n), env.r);
        double tail = 0.0, rp = 1.0;
        for (int k = n + 1; k <= t.order; ++k) {
            tail += std::fabs(t.coeffs[size_t(k)]) * rp;
            rp *= r;
        }
        if (tail > 0.0) env = env_sum(env, ErrorEnvelope::analytic(tail, 1.0, r));
        return env;
    };

    TaylorJet out;
    out.x0 = a.x0;
    out.order = n;
    out.coeffs.assign(a.coeffs.begin(), a.coeffs.begin() + n + 1);
    Series bc(b.coeffs.begin(), b.coeffs.begin() + n + 1);
    ErrorEnvelope ea = truncate_env(a), eb = truncate_env(b);

    switch (op) {
    case TjOp::Add:
        out.coeffs = s_add(out.coeffs, bc);
        out.env = env_sum(ea, eb);
        break;
    case TjOp::Sub:
        out.coeffs = s_sub(out.coeffs, bc);
        out.env = env_sum(ea, eb);
        break;
    case TjOp::Mul: {
        // f*g - trunc(pa*pb) = f(g - pb) + pb(f - pa) + dropped convolution
        double fa_sup = poly_abs_sum(out.coeffs, r) + std::pow(r, double(n)) * ea.bound(r);
        double pb_sup = poly_abs_sum(bc, r);
        ErrorEnvelope cross =
            env_sum(env_scale_bounded(eb, fa_sup), env_scale_bounded(ea, pb_sup));
        double tail = 0.0;
        for (int j = n + 1; j <= 2 * n; ++j) {
            double conv = 0.0;
            for (int i = std::max(0, j - n); i <= n && i <= j; ++i)
                conv += out.coeffs[size_t(i)] * bc[size_t(j - i)];
            tail += std::fabs(conv) * std::pow(r, double(j - n - 1));
        }
        out.env = tail > 0.0 ? env_sum(cross, ErrorEnvelope::analytic(tail, 1.0, r))
                             : cross;
        out.coeffs = s_mul(out.coeffs, bc);
        break;
    }
    }
    return out;
}

} // namespace epscalc
