#include "epscalc/verify.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "epscalc/envelope.hpp"
#include "epscalc/errors.hpp"
#include "epscalc/eval.hpp"
#include "epscalc/expr.hpp"
#include "epscalc/geometry.hpp"
#include "epscalc/integrate.hpp"
#include "epscalc/jet.hpp"
#include "epscalc/meanvalue.hpp"
#include "epscalc/taylor.hpp"

namespace epscalc {
namespace {

CheckRecord eq(std::string check, double gp, double lhs, double rhs, double gate) {
    CheckRecord r;
    r.check = std::move(check);
    r.grid_point = gp;
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::fabs(lhs - rhs);
    r.pass = r.residual <= gate;
    return r;
}

CheckRecord le(std::string check, double gp, double lhs, double rhs) {
    CheckRecord r;
    r.check = std::move(check);
    r.grid_point = gp;
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::max(0.0, lhs - rhs);
    r.pass = lhs <= rhs;
    return r;
}

CheckRecord flag(std::string check, double gp, bool pass) {
    CheckRecord r;
    r.check = std::move(check);
    r.grid_point = gp;
    r.lhs = pass ? 1.0 : 0.0;
    r.rhs = 1.0;
    r.residual = pass ? 0.0 : 1.0;
    r.pass = pass;
    return r;
}

// collapse a block of per-point records into one row keeping the worst point
CheckRecord fold_worst(std::string check, const std::vector<CheckRecord>& rows) {
    CheckRecord out;
    out.check = std::move(check);
    out.pass = true;
    for (const auto& r : rows) {
        if (r.residual >= out.residual) {
            out.residual = r.residual;
            out.grid_point = r.grid_point;
            out.lhs = r.lhs;
            out.rhs = r.rhs;
        }
        out.pass = out.pass && r.pass;
    }
    return out;
}

void append(std::vector<CheckRecord>& to, const std::vector<CheckRecord>& rows) {
    to.insert(to.end(), rows.begin(), rows.end());
}

std::vector<double> squeeze_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 20; ++k) g.push_back(std::pow(2.0, -k));
    return g;
}

std::vector<CheckRecord> addition_grid(CurveId curve, const char* label) {
    std::vector<CheckRecord> per_point;
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            double A = -1.5 + 0.2 * i;
            double B = -1.5 + 0.2 * j;
            append(per_point, verify_summation(curve, A, B));
        }
    }
    std::string name = std::string(label) + " addition rules, 16x16 grid, worst point";
    return {fold_worst(std::move(name), per_point)};
}

std::vector<CheckRecord> suite_trig(double tol) {
    std::vector<CheckRecord> out;
    const double pi = pi_bracket().mid();
    const double irt2 = 1.0 / sqrt_interval(2.0).mid();

    struct Entry {
        double A, c, s;
        const char* at;
    };
    const Entry table[] = {
        {0.0, 1.0, 0.0, "0"},
        {pi / 4, irt2, irt2, "pi/4"},
        {pi / 2, 0.0, 1.0, "pi/2"},
        {3 * pi / 4, -irt2, irt2, "3pi/4"},
        {pi, -1.0, 0.0, "pi"},
    };
    for (const Entry& e : table) {
        PairValue v = geo_cos_sin(e.A, tol);
        out.push_back(eq(std::string("closed form cos(") + e.at + ")", e.A, v.first, e.c, 1e-8));
        out.push_back(eq(std::string("closed form sin(") + e.at + ")", e.A, v.second, e.s, 1e-8));
    }

    for (int i = 0; i <= 16; ++i) {
        double A = -3.2 + 0.4 * i;
        PairValue v = geo_cos_sin(A, tol);
        out.push_back(eq("cos^2 + sin^2 = 1", A, v.first * v.first + v.second * v.second,
                         1.0, 1e-7));
    }

    append(out, addition_grid(CurveId::Circle, "circle"));
    append(out, verify_deriv_zero_inequalities(CurveId::Circle, squeeze_grid()));
    return out;
}

std::vector<CheckRecord> suite_hyperbolic(double tol) {
    std::vector<CheckRecord> out;
    for (int i = 0; i <= 16; ++i) {
        double A = -2.4 + 0.3 * i;
        PairValue v = geo_cosh_sinh(A, tol);
        out.push_back(eq("cosh^2 - sinh^2 = 1", A, v.first * v.first - v.second * v.second,
                         1.0, 1e-7));
    }
    append(out, addition_grid(CurveId::Hyperbola, "hyperbola"));
    append(out, verify_deriv_zero_inequalities(CurveId::Hyperbola, squeeze_grid()));
    for (double x : {1.0, 2.0, 10.0, 1e3, 1e6}) {
        Interval b = parallelogram_bound(x);
        CheckRecord r;
        r.check = "parallelogram area bound > 5/36";
        r.grid_point = x;
        r.lhs = b.lo;
        r.rhs = 5.0 / 36.0;
        r.residual = std::max(0.0, r.rhs - r.lhs);
        r.pass = b.lo > 5.0 / 36.0;
        out.push_back(r);
    }
    return out;
}

std::vector<CheckRecord> suite_exp(double tol) {
    std::vector<CheckRecord> out;
    out.push_back(eq("exp(0) = 1", 0.0, geo_exp(0.0, tol), 1.0, 1e-12));
    for (int i = 0; i <= 8; ++i) {
        double A = -2.0 + 0.5 * i;
        out.push_back(eq("exp(A) * exp(-A) = 1", A, geo_exp(A, tol) * geo_exp(-A, tol),
                         1.0, 1e-7));
    }
    append(out, addition_grid(CurveId::SkewHyperbola, "exp"));
    for (double A : {-2.0, -0.5, 0.25, 1.0, 3.0}) {
        double y = geo_exp(A, 1e-11);
        out.push_back(eq("ln(exp(A)) = A", A, ln_from_exp(y), A, 1e-8));
    }
    append(out, verify_deriv_zero_inequalities(CurveId::SkewHyperbola, squeeze_grid()));
    return out;
}

std::vector<CheckRecord> suite_envelope(double) {
    std::vector<CheckRecord> out;
    const ErrorEnvelope table[] = {
        ErrorEnvelope::analytic(1.0, 1.0, 1.0),
        ErrorEnvelope::analytic(0.5, 2.0, 0.5),
        ErrorEnvelope::analytic(3.0, 0.5, 1.0),
        ErrorEnvelope::analytic(0.01, 1.5, 0.25),
    };

    int idx = 0;
    for (const auto& a : table) {
        for (const auto& b : table) {
            ErrorEnvelope s = env_sum(a, b);
            ErrorEnvelope truth = ErrorEnvelope::empirical(
                [a, b](double e) { return a.bound(e) + b.bound(e); }, s.r);
            out.push_back(flag("sum envelope dominates pointwise sum", idx++,
                               env_dominates(s, truth).pass));
        }
    }
    idx = 0;
    for (const auto& a : table) {
        for (double M : {0.5, 2.0, 10.0}) {
            ErrorEnvelope s = env_scale_bounded(a, M);
            ErrorEnvelope truth = ErrorEnvelope::empirical(
                [a, M](double e) { return M * a.bound(e); }, s.r);
            out.push_back(flag("scaled envelope dominates pointwise scale", idx++,
                               env_dominates(s, truth).pass));
        }
    }
    for (const auto& a : table) {
        out.push_back(eq("envelope vanishes at 0", a.C, a.bound(0.0), 0.0, 0.0));
    }

    // funnel: strictly nested boxes with halving heights
    std::vector<FunnelBox> boxes = funnel_boxes(table[0], 0.25, 10);
    bool nested = boxes.size() == 10;
    for (size_t i = 1; i < boxes.size() && nested; ++i)
        nested = boxes[i].x_hi < boxes[i - 1].x_hi && boxes[i].y_hi == 0.5 * boxes[i - 1].y_hi;
    out.push_back(flag("funnel boxes strictly nested, heights halve", 0.0, nested));
    return out;
}

std::vector<CheckRecord> suite_rules(double) {
    std::vector<CheckRecord> out;
    const double pts[] = {1.3, 0.7, 2.5, -1.2};

    for (double x : pts) {
        // product rule path vs monomial path for x*x
        Jet1 prod = jet_mul(jet_var(x), jet_var(x));
        Jet1 mono = jet_monomial(2, x);
        UniquenessResult u = check_uniqueness(prod, mono);
        out.push_back(eq("x*x product rule slope = x^2 rule slope", x, prod.slope,
                         mono.slope, 1e-12));
        out.push_back(flag("uniqueness collapses x*x vs x^2", x, u.pass));

        // chain path (x^2)^3 vs x^6
        Jet1 chain = jet_chain(jet_monomial(3, x * x), jet_monomial(2, x));
        Jet1 six = jet_monomial(6, x);
        out.push_back(eq("(x^2)^3 chain slope = x^6 slope", x, chain.slope, six.slope,
                         1e-9 * std::max(1.0, std::fabs(six.slope))));
        out.push_back(flag("uniqueness collapses (x^2)^3 vs x^6", x,
                           check_uniqueness(chain, six).pass));

        // quotient of equals is the constant 1
        Jet1 q = jet_div(jet_add(jet_mul(jet_var(x), jet_var(x)), jet_const(1.0, x)),
                         jet_add(jet_mul(jet_var(x), jet_var(x)), jet_const(1.0, x)));
        out.push_back(eq("f/f has slope 0", x, q.slope, 0.0, 1e-12));
        out.push_back(eq("f/f has value 1", x, q.value, 1.0, 1e-12));
    }

    for (double x : {1.3, 2.5}) {
        // reciprocal rule vs rational power -1
        Jet1 rec = jet_recip(jet_var(x));
        Jet1 pow = jet_rational_power(-1, 1, x);
        out.push_back(eq("1/x rule slope = x^-1 rule slope", x, rec.slope, pow.slope, 1e-12));

        // inverse-function rule vs the square root power
        Jet1 inv = jet_inverse(jet_monomial(2, x)); // jet of sqrt at x^2
        Jet1 half = jet_rational_power(1, 2, x * x);
        out.push_back(eq("inverse of x^2 slope = sqrt slope", x, inv.slope, half.slope,
                         1e-10));
        out.push_back(flag("uniqueness collapses inverse vs sqrt", x,
                           check_uniqueness(inv, half).pass));
    }
    return out;
}

std::vector<CheckRecord> suite_meanvalue(double tol) {
    std::vector<CheckRecord> out;

    // mean value witness on a cubic
    Expr cubic = parse("x^3-x");
    RealFun f = [&](double x) { return eval_value(cubic, x, tol); };
    JetProvider fj = [&](double x) { return eval_jet(cubic, x, tol); };
    Witness w = mvt_witness(f, fj, 0.0, 1.2, 1e-9);
    out.push_back(flag("mean value witness found on cubic", w.c, w.found));
    out.push_back(le("mean value defect |f'(c) - secant|", w.c, w.residual, 1e-9));

    // critical point of x^2 - x sits at 1/2
    Expr par = parse("x^2-x");
    Witness c = find_critical([&](double x) { return eval_value(par, x, tol); },
                              [&](double x) { return eval_jet(par, x, tol); }, 0.0, 1.0,
                              1e-9);
    out.push_back(eq("critical point of x^2 - x", 0.5, c.c, 0.5, 1e-9));

    // Cauchy form on (x^3, x^2)
    Expr f3 = parse("x^3"), g2 = parse("x^2");
    Witness cw = cmvt_witness([&](double x) { return eval_value(f3, x, tol); },
                              [&](double x) { return eval_value(g2, x, tol); },
                              [&](double x) { return eval_jet(f3, x, tol); },
                              [&](double x) { return eval_jet(g2, x, tol); }, 0.5, 2.0,
                              1e-9);
    out.push_back(flag("Cauchy mean value witness found", cw.c, cw.found));
    out.push_back(le("Cauchy defect |f'/g' - ratio|", cw.c, cw.residual, 1e-8));

    // 0/0 limit certified from the jets: sin(x)/x at 0
    Expr sx = parse("sin(x)");
    Expr xx = parse("x");
    LimitVerdict v00 = lhopital_00(eval_jet(sx, 0.0, tol), eval_jet(xx, 0.0, tol),
                                   [&](double x) { return eval_value(sx, x, tol); },
                                   [&](double x) { return eval_value(xx, x, tol); },
                                   2.0 * tol);
    out.push_back(eq("limit sin(x)/x at 0", 0.0, v00.L, 1.0, 1e-9));
    out.push_back(flag("sin(x)/x envelope certified", 0.0, v00.pass));

    // sampled form with derivative-ratio fit: ln(x)/(1/x) at 0+, limit 0
    Expr lf = parse("ln(x)"), gf = parse("x^-1");
    LimitVerdict vg = lhopital_general([&](double x) { return eval_value(lf, x, tol); },
                                       [&](double x) { return eval_value(gf, x, tol); },
                                       [&](double x) { return eval_jet(lf, x, tol); },
                                       [&](double x) { return eval_jet(gf, x, tol); },
                                       0.0, Side::Right, 0.0, 1e-8, 0.5, 1e-10);
    out.push_back(flag("limit x*ln(x) -> 0 certified", 0.0, vg.pass));
    out.push_back(flag("derivative ratio envelope fitted", 0.0, vg.has_deriv_env));
    if (vg.has_deriv_env) {
        out.push_back(eq("derivative ratio |f'/g'| fits C at p=1", 1.0, vg.deriv_env.C,
                         1.0, 0.1));
        out.push_back(eq("derivative ratio exponent", 1.0, vg.deriv_env.p, 1.0, 0.05));
    }
    return out;
}

std::vector<CheckRecord> suite_taylor(double tol) {
    std::vector<CheckRecord> out;

    // coefficients against their defining recurrences
    TaylorJet te = tjet_from_expr(parse("exp(x)"), 0.0, 5, tol);
    double fact = 1.0;
    for (int k = 0; k <= 5; ++k) {
        if (k > 0) fact *= k;
        out.push_back(eq("exp coefficient 1/k!", k, te.coeffs[size_t(k)], 1.0 / fact, 1e-10));
    }
    TaylorJet ts = tjet_from_expr(parse("sin(x)"), 0.0, 5, tol);
    const double sref[] = {0, 1, 0, -1.0 / 6, 0, 1.0 / 120};
    TaylorJet tc = tjet_from_expr(parse("cos(x)"), 0.0, 5, tol);
    const double cref[] = {1, 0, -1.0 / 2, 0, 1.0 / 24, 0};
    for (int k = 0; k <= 5; ++k) {
        out.push_back(eq("sin coefficient", k, ts.coeffs[size_t(k)], sref[k], 1e-10));
        out.push_back(eq("cos coefficient", k, tc.coeffs[size_t(k)], cref[k], 1e-10));
    }

    // Peano check passes for the true jet, rejects a corrupted c3
    RealFun fe = [&](double x) { return eval_value(parse("exp(x)"), x, tol); };
    PeanoVerdict good = verify_peano(te, fe, 2.0 * tol);
    out.push_back(flag("remainder ratio shrinks for exp jet", 0.0, good.pass));
    TaylorJet bad = te;
    bad.coeffs[3] = 0.0;
    PeanoVerdict rejected = verify_peano(bad, fe, 2.0 * tol);
    out.push_back(flag("corrupted c3 detected", 0.0, !rejected.pass));

    // product arithmetic: exp * exp = exp(2x) coefficients 2^k/k!
    TaylorJet tp = tjet_arith(te, te, TjOp::Mul);
    double f2 = 1.0, p2 = 1.0;
    for (int k = 0; k <= 5; ++k) {
        if (k > 0) { f2 *= k; p2 *= 2.0; }
        out.push_back(eq("exp*exp coefficient 2^k/k!", k, tp.coeffs[size_t(k)], p2 / f2,
                         1e-10));
    }

    // polynomial fixpoint: the model of a polynomial is the polynomial
    TaylorJet tq = tjet_from_expr(parse("x^3-2*x+1"), 0.7, 5, tol);
    out.push_back(eq("polynomial remainder envelope is zero", 0.7, tq.env.C, 0.0, 0.0));

    // order-1 model agrees with the first-order jet
    Expr mix = parse("sin(x)*exp(x)+x^2");
    TaylorJet t1 = tjet_from_expr(mix, 0.4, 1, tol);
    Jet1 j1 = eval_jet(mix, 0.4, tol);
    out.push_back(eq("order-1 value matches jet", 0.4, t1.coeffs[0], j1.value, 1e-12));
    out.push_back(eq("order-1 slope matches jet", 0.4, t1.coeffs[1], j1.slope, 1e-12));
    return out;
}

std::vector<CheckRecord> suite_ftc(double) {
    std::vector<CheckRecord> out;
    RealFun inv = [](double t) { return 1.0 / t; };

    IntegralBracket cb = integrate([](double) { return 3.0; }, 0.25, 1.75, 1e-9);
    out.push_back(eq("constant integrates exactly", 3.0, cb.mid(), 4.5, 0.0));
    out.push_back(eq("constant bracket width is zero", 3.0, cb.width(), 0.0, 0.0));

    IntegralBracket l2 = integrate(inv, 1.0, 2.0, 1e-6);
    double ln2 = ln_from_exp(2.0);
    out.push_back(flag("bracket of 1/t over [1,2] contains ln 2", 2.0,
                       l2.lo <= ln2 && ln2 <= l2.hi));
    out.push_back(le("bracket width meets tolerance", 2.0, l2.width(), 1e-6));
    out.push_back(flag("bracket is rigorous (monotone integrand)", 2.0, l2.rigorous));

    IntegralBracket rev = integrate(inv, 2.0, 1.0, 1e-6);
    out.push_back(eq("reversed endpoints flip the sign", 2.0, rev.lo, -l2.hi, 0.0));

    IntegralBracket ab = integrate(inv, 1.0, 1.7, 1e-7);
    IntegralBracket bc = integrate(inv, 1.7, 2.9, 1e-7);
    IntegralBracket ac = integrate(inv, 1.0, 2.9, 1e-7);
    double mid2 = ab.mid() + bc.mid();
    out.push_back(flag("additivity within widened bracket", 1.7,
                       ac.lo - ab.width() - bc.width() <= mid2 &&
                           mid2 <= ac.hi + ab.width() + bc.width()));

    for (double A : {0.5, 1.0}) {
        IntegralBracket rt = integrate(inv, 1.0, geo_exp(A, 1e-11), 1e-7);
        out.push_back(flag("area under 1/t up to exp(A) returns A", A,
                           rt.lo - 1e-8 <= A && A <= rt.hi + 1e-8));
    }

    // derivative-of-the-integral contract at x1 = 2
    Jet1 j = ftc_jet(inv, 1.0, 2.0, 1e-7);
    out.push_back(eq("accumulated-area slope is f(x1)", 2.0, j.slope, 0.5, 0.0));
    int viol = 0;
    for (int k = 2; k <= 20; k += 3) {
        double eps = std::pow(2.0, -k);
        for (double s : {eps, -eps}) {
            IntegralBracket Fb = integrate(inv, 1.0, 2.0 + s, 1e-7);
            double lhs = std::fabs(Fb.mid() - j.value - j.slope * s);
            if (lhs > std::fabs(s) * j.env.bound(std::fabs(s)) * kCertSlack) ++viol;
        }
    }
    out.push_back(eq("fundamental theorem contract violations", 2.0, viol, 0.0, 0.0));
    return out;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "envelope", "rules", "trig", "hyperbolic", "exp", "meanvalue", "taylor", "ftc",
    };
    return names;
}

std::vector<CheckRecord> run_suite(const std::string& suite, double tol) {
    if (suite == "envelope") return suite_envelope(tol);
    if (suite == "rules") return suite_rules(tol);
    if (suite == "trig") return suite_trig(tol);
    if (suite == "hyperbolic") return suite_hyperbolic(tol);
    if (suite == "exp") return suite_exp(tol);
    if (suite == "meanvalue") return suite_meanvalue(tol);
    if (suite == "taylor") return suite_taylor(tol);
    if (suite == "ftc") return suite_ftc(tol);
    if (suite == "all") {
        std::vector<CheckRecord> out;
        for (const auto& name : suite_names()) append(out, run_suite(name, tol));
        return out;
    }
    throw DomainError("unknown verification suite: " + suite);
}

} // namespace epscalc
