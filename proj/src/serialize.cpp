#include "epscalc/serialize.hpp"

#include <charconv>
#include <cstdio>

namespace epscalc {

nlohmann::json env_json(const ErrorEnvelope& e) {
    if (!e.is_analytic()) return {{"r", e.r}, {"sampled", true}};
    return {{"C", e.C}, {"p", e.p}, {"r", e.r}};
}

nlohmann::json jet_json(const Jet1& j) {
    return {{"env", env_json(j.env)}, {"slope", j.slope}, {"value", j.value}, {"x0", j.x0}};
}

nlohmann::json box_json(const FunnelBox& b) {
    return {{"x_hi", b.x_hi}, {"x_lo", b.x_lo}, {"y_hi", b.y_hi}, {"y_lo", b.y_lo}};
}

nlohmann::json boxes_json(const std::vector<FunnelBox>& bs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : bs) arr.push_back(box_json(b));
    return {{"boxes", arr}};
}

nlohmann::json bracket_json(const IntegralBracket& br) {
    return {{"a", br.a},   {"b", br.b},
            {"hi", br.hi}, {"lo", br.lo},
            {"n_panels", br.n_panels}, {"rigorous", br.rigorous}};
}

nlohmann::json tjet_json(const TaylorJet& tj) {
    return {{"coeffs", tj.coeffs}, {"env", env_json(tj.env)},
            {"order", tj.order},   {"x0", tj.x0}};
}

nlohmann::json check_json(const CheckRecord& r) {
    return {{"check", r.check}, {"grid_point", r.grid_point}, {"lhs", r.lhs},
            {"pass", r.pass},   {"residual", r.residual},     {"rhs", r.rhs}};
}

nlohmann::json checks_json(const std::vector<CheckRecord>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    int fails = 0;
    for (const auto& r : rows) {
        arr.push_back(check_json(r));
        if (!r.pass) ++fails;
    }
    return {{"checks", arr}, {"failed", fails}, {"total", (long long)rows.size()}};
}

nlohmann::json meanvalue_json(const std::string& op, double c_or_L,
                              double residual, const ErrorEnvelope& env, bool pass) {
    return {{"c_or_L", c_or_L}, {"env", env_json(env)}, {"op", op},
            {"pass", pass},     {"residual", residual}};
}

std::string fmt_shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fmt_csv(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string csv_boxes(const std::vector<FunnelBox>& bs) {
    std::string out = "x_lo,x_hi,y_lo,y_hi\n";
    for (const auto& b : bs)
        out += fmt_csv(b.x_lo) + "," + fmt_csv(b.x_hi) + "," + fmt_csv(b.y_lo) + "," +
               fmt_csv(b.y_hi) + "\n";
    return out;
}

std::string csv_checks(const std::vector<CheckRecord>& rows) {
    std::string out = "check,grid_point,lhs,rhs,residual,pass\n";
    for (const auto& r : rows)
        out += r.check + "," + fmt_csv(r.grid_point) + "," + fmt_csv(r.lhs) + "," +
               fmt_csv(r.rhs) + "," + fmt_csv(r.residual) + "," + (r.pass ? "1" : "0") + "\n";
    return out;
}

std::string csv_bracket(const IntegralBracket& br) {
    std::string out = "a,b,lo,hi,n_panels,rigorous\n";
    out += fmt_csv(br.a) + "," + fmt_csv(br.b) + "," + fmt_csv(br.lo) + "," +
           fmt_csv(br.hi) + "," + std::to_string(br.n_panels) + "," +
           (br.rigorous ? "1" : "0") + "\n";
    return out;
}

std::string csv_jet(const Jet1& j) {
    std::string out = "x0,value,slope,env_C,env_p,env_r\n";
    out += fmt_csv(j.x0) + "," + fmt_csv(j.value) + "," + fmt_csv(j.slope) + "," +
           fmt_csv(j.env.C) + "," + fmt_csv(j.env.p) + "," + fmt_csv(j.env.r) + "\n";
    return out;
}

std::string csv_tjet(const TaylorJet& tj) {
    std::string out = "k,coeff\n";
    for (size_t k = 0; k < tj.coeffs.size(); ++k)
        out += std::to_string(k) + "," + fmt_csv(tj.coeffs[k]) + "\n";
    return out;
}

} // namespace epscalc
