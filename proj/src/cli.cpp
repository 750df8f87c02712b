#include "epscalc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "epscalc/envelope.hpp"
#include "epscalc/errors.hpp"
#include "epscalc/eval.hpp"
#include "epscalc/expr.hpp"
#include "epscalc/integrate.hpp"
#include "epscalc/meanvalue.hpp"
#include "epscalc/serialize.hpp"
#include "epscalc/taylor.hpp"
#include "epscalc/verify.hpp"

namespace epscalc {
namespace {

std::string env_text(const ErrorEnvelope& e) {
    if (!e.is_analytic()) return "sampled r=" + fmt_shortest(e.r);
    return "C=" + fmt_shortest(e.C) + " p=" + fmt_shortest(e.p) +
           " r=" + fmt_shortest(e.r);
}

// default tolerance: 1e-9, overridable by EPSCALC_TOL, beaten by --tol
double base_tol(std::ostream& err, bool& bad) {
    const char* s = std::getenv("EPSCALC_TOL");
    if (!s || !*s) return 1e-9;
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(v > 0.0)) {
        err << "EPSCALC_TOL is not a positive number: " << s << "\n";
        bad = true;
        return 1e-9;
    }
    return v;
}

int deliver(const std::string& payload, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
    if (out_path.empty() || out_path == "-") {
        out << payload;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        err << "cannot open output file: " << out_path << "\n";
        return 2;
    }
    f << payload;
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"error-envelope calculus: certified values, jets, Taylor models, "
                 "bracketed integrals, limits"};
    app.require_subcommand(1);

    bool bad_env = false;
    const double tol_default = base_tol(err, bad_env);
    if (bad_env) return 2;

    std::string format = "text";
    std::string out_path;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        sub->add_option("--out", out_path, "write output to this path instead of stdout");
    };

    // eval
    std::string e_expr;
    double e_at = 0.0;
    double e_tol = tol_default;
    bool e_geometric = false;
    CLI::App* c_eval = app.add_subcommand("eval", "evaluate an expression");
    c_eval->add_option("expr", e_expr, "expression in x")->required();
    c_eval->add_option("--at", e_at, "evaluation point")->required();
    c_eval->add_option("--tol", e_tol, "evaluation tolerance");
    c_eval->add_flag("--geometric", e_geometric,
                     "evaluate transcendentals from curve areas (always on; "
                     "the flag only documents intent)");
    add_common(c_eval);

    // jet
    std::string j_expr;
    double j_at = 0.0, j_tol = tol_default;
    CLI::App* c_jet = app.add_subcommand("jet", "first-order jet with certified envelope");
    c_jet->add_option("expr", j_expr)->required();
    c_jet->add_option("--at", j_at)->required();
    c_jet->add_option("--tol", j_tol);
    add_common(c_jet);

    // funnel
    std::string fl_expr;
    double fl_at = 0.0, fl_tol = tol_default, fl_y0 = 0.0;
    int fl_boxes = 10;
    CLI::App* c_funnel =
        app.add_subcommand("funnel", "nested envelope boxes around the base point");
    c_funnel->add_option("expr", fl_expr)->required();
    c_funnel->add_option("--at", fl_at)->required();
    c_funnel->add_option("--boxes", fl_boxes, "number of boxes")->capture_default_str();
    c_funnel->add_option("--y0", fl_y0, "first box height (default: half the envelope "
                                        "bound at its radius)");
    c_funnel->add_option("--tol", fl_tol);
    add_common(c_funnel);

    // taylor
    std::string t_expr;
    double t_at = 0.0, t_tol = tol_default;
    int t_order = 0;
    bool t_check = false;
    CLI::App* c_taylor = app.add_subcommand("taylor", "order-n model with remainder envelope");
    c_taylor->add_option("expr", t_expr)->required();
    c_taylor->add_option("--at", t_at)->required();
    c_taylor->add_option("--order", t_order, "polynomial order, >= 1")->required();
    c_taylor->add_flag("--check", t_check, "re-verify the remainder ratio decays");
    c_taylor->add_option("--tol", t_tol);
    add_common(c_taylor);

    // integrate
    std::string i_expr;
    double i_from = 0.0, i_to = 0.0, i_tol = tol_default;
    CLI::App* c_int = app.add_subcommand("integrate", "bracketed Riemann integral");
    c_int->add_option("expr", i_expr)->required();
    c_int->add_option("--from", i_from)->required();
    c_int->add_option("--to", i_to)->required();
    c_int->add_option("--tol", i_tol, "bracket width target");
    add_common(c_int);

    // lhopital
    std::string l_f, l_g, l_side = "right";
    double l_at = 0.0, l_tol = tol_default;
    double l_claim = 0.0;
    bool l_has_claim = false;
    CLI::App* c_lhop = app.add_subcommand("lhopital", "certified limit of f/g");
    c_lhop->add_option("f", l_f, "numerator expression")->required();
    c_lhop->add_option("g", l_g, "denominator expression")->required();
    c_lhop->add_option("--at", l_at)->required();
    c_lhop->add_option("--side", l_side)->check(CLI::IsMember({"left", "right"}));
    c_lhop->add_option("--claim", l_claim, "claimed limit to certify")
        ->each([&](const std::string&) { l_has_claim = true; });
    c_lhop->add_option("--tol", l_tol);
    add_common(c_lhop);

    // verify
    std::string v_suite;
    double v_tol = tol_default;
    CLI::App* c_verify = app.add_subcommand("verify", "run a self-check suite");
    {
        std::vector<std::string> allowed = suite_names();
        allowed.push_back("all");
        c_verify->add_option("suite", v_suite)->required()->check(CLI::IsMember(allowed));
    }
    c_verify->add_option("--tol", v_tol);
    add_common(c_verify);

    // CLI11 wants a mutable argv-shaped view
    std::vector<std::string> argv_s;
    argv_s.reserve(args.size() + 1);
    argv_s.push_back("epscalc");
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_s) argv.push_back(s.data());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        std::string payload;
        int code = 0;

        if (*c_eval) {
            double v = eval_value(parse(e_expr), e_at, e_tol);
            if (format == "json")
                payload = nlohmann::json({{"at", e_at}, {"value", v}}).dump() + "\n";
            else if (format == "csv")
                payload = "x,value\n" + fmt_csv(e_at) + "," + fmt_csv(v) + "\n";
            else
                payload = fmt_shortest(v) + "\n";
        } else if (*c_jet) {
            Jet1 j = eval_jet(parse(j_expr), j_at, j_tol);
            if (format == "json")
                payload = jet_json(j).dump() + "\n";
            else if (format == "csv")
                payload = csv_jet(j);
            else
                payload = "x0     " + fmt_shortest(j.x0) + "\nvalue  " +
                          fmt_shortest(j.value) + "\nslope  " + fmt_shortest(j.slope) +
                          "\nenv    " + env_text(j.env) + "\n";
        } else if (*c_funnel) {
            Jet1 j = eval_jet(parse(fl_expr), fl_at, fl_tol);
            double y0 = fl_y0 > 0.0 ? fl_y0 : 0.5 * j.env.bound(j.env.r);
            if (!(y0 > 0.0))
                throw DomainError("envelope bound is identically zero; pass --y0");
            std::vector<FunnelBox> boxes = funnel_boxes(j.env, y0, fl_boxes);
            if (format == "json")
                payload = boxes_json(boxes).dump() + "\n";
            else if (format == "csv")
                payload = csv_boxes(boxes);
            else {
                for (size_t k = 0; k < boxes.size(); ++k)
                    payload += "box " + std::to_string(k) + ": x in [" +
                               fmt_shortest(boxes[k].x_lo) + ", " +
                               fmt_shortest(boxes[k].x_hi) + "], y in [" +
                               fmt_shortest(boxes[k].y_lo) + ", " +
                               fmt_shortest(boxes[k].y_hi) + "]\n";
            }
        } else if (*c_taylor) {
            Expr ex = parse(t_expr);
            TaylorJet tj = tjet_from_expr(ex, t_at, t_order, t_tol);
            nlohmann::json peano;
            std::string peano_text;
            if (t_check) {
                PeanoVerdict pv = verify_peano(
                    tj, [&](double x) { return eval_value(ex, x, t_tol); }, 2.0 * t_tol);
                if (!pv.pass) code = 1;
                peano = {{"C", pv.fitC},
                         {"p", pv.fitp},
                         {"pass", pv.pass},
                         {"witness_eps", pv.witness_eps},
                         {"witness_ratio", pv.witness_ratio}};
                peano_text = std::string("peano  ") + (pv.pass ? "pass" : "FAIL") +
                             " C=" + fmt_shortest(pv.fitC) + " p=" + fmt_shortest(pv.fitp) +
                             "\n";
            }
            if (format == "json") {
                nlohmann::json o = tjet_json(tj);
                if (t_check) o["peano"] = peano;
                payload = o.dump() + "\n";
            } else if (format == "csv") {
                payload = csv_tjet(tj);
            } else {
                payload = "x0     " + fmt_shortest(tj.x0) + "\norder  " +
                          std::to_string(tj.order) + "\n";
                for (size_t k = 0; k < tj.coeffs.size(); ++k)
                    payload += "c" + std::to_string(k) + "     " +
                               fmt_shortest(tj.coeffs[k]) + "\n";
                payload += "env    " + env_text(tj.env) + "\n" + peano_text;
            }
        } else if (*c_int) {
            Expr ex = parse(i_expr);
            IntegralBracket br =
                integrate([&](double x) { return eval_value(ex, x, i_tol); }, i_from, i_to,
                          i_tol);
            if (format == "json")
                payload = bracket_json(br).dump() + "\n";
            else if (format == "csv")
                payload = csv_bracket(br);
            else
                payload = "bracket  [" + fmt_shortest(br.lo) + ", " + fmt_shortest(br.hi) +
                          "]\nmid      " + fmt_shortest(br.mid()) + "\nwidth    " +
                          fmt_shortest(br.width()) + "\nn_panels " +
                          std::to_string(br.n_panels) + "\nrigorous " +
                          (br.rigorous ? "yes" : "no") + "\n";
        } else if (*c_lhop) {
            Expr fe = parse(l_f), ge = parse(l_g);
            RealFun f = [&](double x) { return eval_value(fe, x, l_tol); };
            RealFun g = [&](double x) { return eval_value(ge, x, l_tol); };
            LimitVerdict v;
            bool done = false;
            if (!l_has_claim) {
                // no claim: try the jet route first (0/0 with analytic envelopes)
                try {
                    v = lhopital_00(eval_jet(fe, l_at, l_tol), eval_jet(ge, l_at, l_tol),
                                    f, g, 2.0 * l_tol);
                    done = true;
                } catch (const DomainError&) {
                } catch (const CertificationError&) {
                }
            }
            if (!done) {
                Side side = l_side == "left" ? Side::Left : Side::Right;
                double claim = l_claim;
                if (!l_has_claim) {
                    // estimate from the innermost sample, then certify that claim
                    double x = l_at + (side == Side::Right ? 1.0 : -1.0) * 0x1p-40;
                    claim = f(x) / g(x);
                }
                v = lhopital_general(f, g,
                                     [&](double x) { return eval_jet(fe, x, l_tol); },
                                     [&](double x) { return eval_jet(ge, x, l_tol); },
                                     l_at, side, claim, std::max(l_tol, 1e-10), 1.0,
                                     2.0 * l_tol);
            }
            if (!v.pass) code = 1;
            if (format == "json") {
                nlohmann::json o = meanvalue_json("lhopital", v.L, v.residual, v.env, v.pass);
                if (v.has_deriv_env) o["deriv_env"] = env_json(v.deriv_env);
                payload = o.dump() + "\n";
            } else if (format == "csv") {
                payload = "op,c_or_L,residual,pass\nlhopital," + fmt_csv(v.L) + "," +
                          fmt_csv(v.residual) + "," + (v.pass ? "1" : "0") + "\n";
            } else {
                payload = "L        " + fmt_shortest(v.L) + "\nresidual " +
                          fmt_shortest(v.residual) + "\nenv      " + env_text(v.env) + "\n";
                if (v.has_deriv_env)
                    payload += "deriv    " + env_text(v.deriv_env) + "\n";
                payload += std::string("pass     ") + (v.pass ? "yes" : "no") + "\n";
            }
        } else if (*c_verify) {
            std::vector<CheckRecord> rows = run_suite(v_suite, v_tol);
            int fails = 0;
            for (const auto& r : rows)
                if (!r.pass) ++fails;
            if (fails > 0) code = 1;
            if (format == "json") {
                payload = checks_json(rows).dump() + "\n";
            } else if (format == "csv") {
                payload = csv_checks(rows);
            } else {
                for (const auto& r : rows)
                    payload += std::string(r.pass ? "PASS " : "FAIL ") + r.check + " @ " +
                               fmt_shortest(r.grid_point) +
                               "  residual=" + fmt_shortest(r.residual) + "\n";
                payload += std::to_string(rows.size()) + " checks, " +
                           std::to_string(fails) + " failures\n";
            }
        }

        int dcode = deliver(payload, out_path, out, err);
        return dcode != 0 ? dcode : code;
    } catch (const ParseError& e) {
        err << "parse error at byte " << e.offset << ": " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const CertificationError& e) {
        err << "certification error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace epscalc
