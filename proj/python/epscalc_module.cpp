#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epscalc/envelope.hpp"
#include "epscalc/errors.hpp"
#include "epscalc/eval.hpp"
#include "epscalc/expr.hpp"
#include "epscalc/geometry.hpp"
#include "epscalc/integrate.hpp"
#include "epscalc/jet.hpp"
#include "epscalc/meanvalue.hpp"
#include "epscalc/taylor.hpp"
#include "epscalc/verify.hpp"

namespace py = pybind11;
using namespace epscalc;

namespace {

Side side_from(const std::string& s) {
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    throw DomainError("side must be 'left' or 'right'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "error-envelope calculus core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);
    static py::exception<ParseError> parse_exc(m, "ExprParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::set_error(parse_exc, e.what());
        }
    });

    py::class_<ErrorEnvelope>(m, "ErrorEnvelope")
        .def_readonly("C", &ErrorEnvelope::C)
        .def_readonly("p", &ErrorEnvelope::p)
        .def_readonly("r", &ErrorEnvelope::r)
        .def_property_readonly("analytic", &ErrorEnvelope::is_analytic)
        .def("bound", &ErrorEnvelope::bound, py::arg("eps"))
        .def("__repr__", [](const ErrorEnvelope& e) {
            if (!e.is_analytic()) return std::string("ErrorEnvelope(sampled)");
            return "ErrorEnvelope(C=" + std::to_string(e.C) + ", p=" + std::to_string(e.p) +
                   ", r=" + std::to_string(e.r) + ")";
        });

    py::class_<Jet1>(m, "Jet")
        .def_readonly("x0", &Jet1::x0)
        .def_readonly("value", &Jet1::value)
        .def_readonly("slope", &Jet1::slope)
        .def_readonly("env", &Jet1::env)
        .def("__repr__", [](const Jet1& j) {
            return "Jet(x0=" + std::to_string(j.x0) + ", value=" + std::to_string(j.value) +
                   ", slope=" + std::to_string(j.slope) + ")";
        });

    py::class_<TaylorJet>(m, "TaylorJet")
        .def_readonly("x0", &TaylorJet::x0)
        .def_readonly("coeffs", &TaylorJet::coeffs)
        .def_readonly("order", &TaylorJet::order)
        .def_readonly("env", &TaylorJet::env)
        .def("poly", &tjet_poly, py::arg("eps"));

    py::class_<PeanoVerdict>(m, "PeanoVerdict")
        .def_readonly("ok", &PeanoVerdict::pass)
        .def_readonly("C", &PeanoVerdict::fitC)
        .def_readonly("p", &PeanoVerdict::fitp)
        .def_readonly("witness_eps", &PeanoVerdict::witness_eps)
        .def_readonly("witness_ratio", &PeanoVerdict::witness_ratio);

    py::class_<IntegralBracket>(m, "IntegralBracket")
        .def_readonly("lo", &IntegralBracket::lo)
        .def_readonly("hi", &IntegralBracket::hi)
        .def_readonly("n_panels", &IntegralBracket::n_panels)
        .def_readonly("a", &IntegralBracket::a)
        .def_readonly("b", &IntegralBracket::b)
        .def_readonly("rigorous", &IntegralBracket::rigorous)
        .def("mid", &IntegralBracket::mid)
        .def("width", &IntegralBracket::width);

    py::class_<Witness>(m, "Witness")
        .def_readonly("c", &Witness::c)
        .def_readonly("residual", &Witness::residual)
        .def_readonly("found", &Witness::found);

    py::class_<LimitVerdict>(m, "LimitVerdict")
        .def_readonly("L", &LimitVerdict::L)
        .def_readonly("env", &LimitVerdict::env)
        .def_readonly("deriv_env", &LimitVerdict::deriv_env)
        .def_readonly("has_deriv_env", &LimitVerdict::has_deriv_env)
        .def_readonly("residual", &LimitVerdict::residual)
        .def_readonly("ok", &LimitVerdict::pass);

    py::class_<FunnelBox>(m, "FunnelBox")
        .def_readonly("x_lo", &FunnelBox::x_lo)
        .def_readonly("x_hi", &FunnelBox::x_hi)
        .def_readonly("y_lo", &FunnelBox::y_lo)
        .def_readonly("y_hi", &FunnelBox::y_hi);

    py::class_<CheckRecord>(m, "CheckRecord")
        .def_readonly("check", &CheckRecord::check)
        .def_readonly("grid_point", &CheckRecord::grid_point)
        .def_readonly("lhs", &CheckRecord::lhs)
        .def_readonly("rhs", &CheckRecord::rhs)
        .def_readonly("residual", &CheckRecord::residual)
        .def_readonly("ok", &CheckRecord::pass);

    // expression surface
    m.def(
        "value",
        [](const std::string& src, double at, double tol) {
            return eval_value(parse(src), at, tol);
        },
        py::arg("expr"), py::arg("at"), py::arg("tol") = 1e-9,
        "evaluate an expression in x; transcendentals come from curve areas");
    m.def(
        "jet",
        [](const std::string& src, double at, double tol) {
            return eval_jet(parse(src), at, tol);
        },
        py::arg("expr"), py::arg("at"), py::arg("tol") = 1e-9,
        "value, slope, and certified error envelope at a point");
    m.def(
        "taylor",
        [](const std::string& src, double at, int order, double tol) {
            return tjet_from_expr(parse(src), at, order, tol);
        },
        py::arg("expr"), py::arg("at"), py::arg("order"), py::arg("tol") = 1e-9);
    m.def(
        "check_taylor",
        [](const TaylorJet& tj, const std::string& src, double tol) {
            Expr e = parse(src);
            return verify_peano(
                tj, [e, tol](double x) { return eval_value(e, x, tol); }, 2.0 * tol);
        },
        py::arg("tjet"), py::arg("expr"), py::arg("tol") = 1e-9,
        "re-verify that the remainder ratio decays for this expression");
    m.def(
        "integrate",
        [](const std::string& src, double a, double b, double tol) {
            Expr e = parse(src);
            return integrate([e, tol](double x) { return eval_value(e, x, tol); }, a, b,
                             tol);
        },
        py::arg("expr"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-6);
    m.def(
        "ftc_jet",
        [](const std::string& src, double base, double x1, double tol) {
            Expr e = parse(src);
            return ftc_jet([e, tol](double x) { return eval_value(e, x, tol); }, base, x1,
                           tol);
        },
        py::arg("expr"), py::arg("base"), py::arg("x1"), py::arg("tol") = 1e-6);
    m.def(
        "limit",
        [](const std::string& fs, const std::string& gs, double at, const std::string& side,
           py::object claim, double tol) {
            Expr fe = parse(fs), ge = parse(gs);
            RealFun f = [fe, tol](double x) { return eval_value(fe, x, tol); };
            RealFun g = [ge, tol](double x) { return eval_value(ge, x, tol); };
            if (claim.is_none()) {
                try {
                    return lhopital_00(eval_jet(fe, at, tol), eval_jet(ge, at, tol), f, g,
                                       2.0 * tol);
                } catch (const DomainError&) {
                } catch (const CertificationError&) {
                }
            }
            Side sd = side_from(side);
            double L;
            if (claim.is_none()) {
                double x = at + (sd == Side::Right ? 1.0 : -1.0) * 0x1p-40;
                L = f(x) / g(x);
            } else {
                L = claim.cast<double>();
            }
            return lhopital_general(
                f, g, [fe, tol](double x) { return eval_jet(fe, x, tol); },
                [ge, tol](double x) { return eval_jet(ge, x, tol); }, at, sd, L,
                std::max(tol, 1e-10), 1.0, 2.0 * tol);
        },
        py::arg("f"), py::arg("g"), py::arg("at"), py::arg("side") = "right",
        py::arg("claim") = py::none(), py::arg("tol") = 1e-9,
        "certified limit of f/g at a point (jet route when it applies, sampled "
        "power-law fit otherwise)");
    m.def(
        "funnel",
        [](const std::string& src, double at, double y0, int boxes, double tol) {
            Jet1 j = eval_jet(parse(src), at, tol);
            double h = y0 > 0.0 ? y0 : 0.5 * j.env.bound(j.env.r);
            if (!(h > 0.0)) throw DomainError("envelope bound is identically zero; pass y0");
            return funnel_boxes(j.env, h, boxes);
        },
        py::arg("expr"), py::arg("at"), py::arg("y0") = 0.0, py::arg("boxes") = 10,
        py::arg("tol") = 1e-9);
    m.def("verify", &run_suite, py::arg("suite"), py::arg("tol") = 1e-9,
          "run a named self-check suite and return its records");

    // geometric kernels
    m.def(
        "cos_sin",
        [](double A, double tol) {
            PairValue v = geo_cos_sin(A, tol);
            return std::make_pair(v.first, v.second);
        },
        py::arg("A"), py::arg("tol") = 1e-9);
    m.def(
        "cosh_sinh",
        [](double A, double tol) {
            PairValue v = geo_cosh_sinh(A, tol);
            return std::make_pair(v.first, v.second);
        },
        py::arg("A"), py::arg("tol") = 1e-9);
    m.def("exp", &geo_exp, py::arg("A"), py::arg("tol") = 1e-9);
    m.def("ln", &ln_from_exp, py::arg("y"), py::arg("tol") = 1e-12);
    m.def("pi", []() { return pi_bracket().mid(); });

    // witnesses
    m.def(
        "mean_value_witness",
        [](const std::string& src, double a, double b, double tol) {
            Expr e = parse(src);
            return mvt_witness([e, tol](double x) { return eval_value(e, x, tol); },
                               [e, tol](double x) { return eval_jet(e, x, tol); }, a, b,
                               std::max(tol, 1e-12));
        },
        py::arg("expr"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
}
