#include "epscalc/eval.hpp"

#include <cmath>
#include <string>

#include "epscalc/geometry.hpp"
#include "epscalc/meanvalue.hpp"

namespace epscalc {

namespace {

[[noreturn]] void fail_at(const ExprNode& n, const std::string& what) {
    throw DomainError(what + " (near byte " + std::to_string(n.src_offset) + ")");
}

void check_exponent(const ExprNode& n) {
    const long long lim = 1000000;
    if (n.pow_num > lim || n.pow_num < -lim || n.pow_den > lim)
        fail_at(n, "exponent too large to evaluate");
}

// jet of the library function at base point u; the chain rule does the rest
Jet1 call_jet(const ExprNode& n, double u, double tol) {
    switch (n.call) {
    case CallName::Sin: {
        PairValue cs = geo_cos_sin(u, tol);
        // |sin''| <= 1 everywhere
        return {u, cs.second, cs.first, ErrorEnvelope::analytic(0.5, 1.0, 1.0)};
    }
    case CallName::Cos: {
        PairValue cs = geo_cos_sin(u, tol);
        return {u, cs.first, -cs.second, ErrorEnvelope::analytic(0.5, 1.0, 1.0)};
    }
    case CallName::Sinh:
    case CallName::Cosh: {
        PairValue hs = geo_cosh_sinh(u, tol);
        // |f''| <= cosh(|u| + 1) on radius 1, for both of them
        double big = geo_cosh_sinh(std::fabs(u) + 1.0, 1e-9).first;
        ErrorEnvelope env = ErrorEnvelope::analytic(0.5 * big, 1.0, 1.0);
        if (n.call == CallName::Sinh) return {u, hs.second, hs.first, env};
        return {u, hs.first, hs.second, env};
    }
    case CallName::Exp: {
        double v = geo_exp(u, tol);
        double r = std::min(1.0, 708.5 - u);
        if (!(r > 0.0)) fail_at(n, "exp argument too large for a working radius");
        double big = geo_exp(u + r, 1e-9);
        return {u, v, v, ErrorEnvelope::analytic(0.5 * big, 1.0, r)};
    }
    case CallName::Ln: {
        if (!(u > 0.0)) fail_at(n, "ln of a nonpositive value");
        double v = ln_from_exp(u, tol);
        double r = std::min(1.0, 0.5 * u);
        // |1/x^2| <= 1/(u-r)^2 on |h| <= r
        double c = 0.5 / ((u - r) * (u - r));
        return {u, v, 1.0 / u, ErrorEnvelope::analytic(c, 1.0, r)};
    }
    case CallName::Sqrt: {
        if (!(u > 0.0)) fail_at(n, "sqrt needs a positive base point");
        return jet_rational_power(1, 2, u);
    }
    case CallName::Abs: {
        if (u == 0.0) fail_at(n, "abs is not differentiable at 0");
        double s = u > 0.0 ? 1.0 : -1.0;
        // |u + h| = |u| + s h exactly while |h| <= |u|
        return {u, std::fabs(u), s, ErrorEnvelope::zero(std::fabs(u))};
    }
    }
    fail_at(n, "unknown function");
}

Jet1 jet_walk(const ExprNode& n, double x0, double tol) {
    switch (n.kind) {
    case ExprKind::Constant: return jet_const(n.constant, x0);
    case ExprKind::Variable: return jet_var(x0);
    case ExprKind::Neg: {
        Jet1 a = jet_walk(*n.a, x0, tol);
        return jet_sub(jet_const(0.0, x0), a);
    }
    case ExprKind::Add: return jet_add(jet_walk(*n.a, x0, tol), jet_walk(*n.b, x0, tol));
    case ExprKind::Sub: return jet_sub(jet_walk(*n.a, x0, tol), jet_walk(*n.b, x0, tol));
    case ExprKind::Mul: return jet_mul(jet_walk(*n.a, x0, tol), jet_walk(*n.b, x0, tol));
    case ExprKind::Div: {
        Jet1 a = jet_walk(*n.a, x0, tol);
        Jet1 b = jet_walk(*n.b, x0, tol);
        if (b.value == 0.0) fail_at(n, "division by a zero-valued jet");
        return jet_div(a, b);
    }
    case ExprKind::Pow: {
        check_exponent(n);
        Jet1 a = jet_walk(*n.a, x0, tol);
        if (n.pow_num == 0) return jet_const(1.0, x0);
        Jet1 outer = jet_rational_power(n.pow_num, n.pow_den, a.value);
        return jet_chain(outer, a);
    }
    case ExprKind::Call: {
        Jet1 a = jet_walk(*n.a, x0, tol);
        return jet_chain(call_jet(n, a.value, tol), a);
    }
    }
    fail_at(n, "malformed expression node");
}

double powi(double base, long long n) {
    // same iterative product as the monomial jet, so values match bitwise
    if (n < 0) return 1.0 / powi(base, -n);
    double v = 1.0;
    for (long long i = 0; i < n; ++i) v *= base;
    return v;
}

double value_walk(const ExprNode& n, double x0, double tol) {
    switch (n.kind) {
    case ExprKind::Constant: return n.constant;
    case ExprKind::Variable: return x0;
    case ExprKind::Neg: return -value_walk(*n.a, x0, tol);
    case ExprKind::Add: return value_walk(*n.a, x0, tol) + value_walk(*n.b, x0, tol);
    case ExprKind::Sub: return value_walk(*n.a, x0, tol) - value_walk(*n.b, x0, tol);
    case ExprKind::Mul: return value_walk(*n.a, x0, tol) * value_walk(*n.b, x0, tol);
    case ExprKind::Div: {
        double a = value_walk(*n.a, x0, tol);
        double b = value_walk(*n.b, x0, tol);
        if (b == 0.0) fail_at(n, "division by zero");
        return a / b;
    }
    case ExprKind::Pow: {
        check_exponent(n);
        double a = value_walk(*n.a, x0, tol);
        if (n.pow_num == 0) return 1.0;
        if (n.pow_den == 1) {
            if (a == 0.0 && n.pow_num < 0) fail_at(n, "negative power of zero");
            return powi(a, n.pow_num);
        }
        if (a == 0.0) {
            if (n.pow_num < 0) fail_at(n, "negative power of zero");
            return 0.0;
        }
        return jet_rational_power(n.pow_num, n.pow_den, a).value;
    }
    case ExprKind::Call: {
        double u = value_walk(*n.a, x0, tol);
        switch (n.call) {
        case CallName::Sin: return geo_cos_sin(u, tol).second;
        case CallName::Cos: return geo_cos_sin(u, tol).first;
        case CallName::Sinh: return geo_cosh_sinh(u, tol).second;
        case CallName::Cosh: return geo_cosh_sinh(u, tol).first;
        case CallName::Exp: return geo_exp(u, tol);
        case CallName::Ln:
            if (!(u > 0.0)) fail_at(n, "ln of a nonpositive value");
            return ln_from_exp(u, tol);
        case CallName::Sqrt:
            if (u == 0.0) return 0.0;
            if (!(u > 0.0)) fail_at(n, "sqrt of a negative value");
            return jet_rational_power(1, 2, u).value;
        case CallName::Abs: return std::fabs(u);
        }
        fail_at(n, "unknown function");
    }
    }
    fail_at(n, "malformed expression node");
}

} // namespace

Jet1 eval_jet(const Expr& e, double x0, double tol) {
    if (!e) throw DomainError("empty expression");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (!std::isfinite(x0)) throw DomainError("base point must be finite");
    return jet_walk(*e, x0, tol);
}

double eval_value(const Expr& e, double x0, double tol) {
    if (!e) throw DomainError("empty expression");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (!std::isfinite(x0)) throw DomainError("base point must be finite");
    return value_walk(*e, x0, tol);
}

} // namespace epscalc
