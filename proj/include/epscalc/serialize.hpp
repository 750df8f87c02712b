#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "epscalc/envelope.hpp"
#include "epscalc/integrate.hpp"
#include "epscalc/jet.hpp"
#include "epscalc/report.hpp"
#include "epscalc/taylor.hpp"

// JSON and CSV emission. One rule everywhere: objects with sorted keys and
// shortest round-trip numbers (that is what nlohmann::json::dump gives),
// so identical inputs produce byte-identical output. CSV rounds to 6
// significant digits; it exists for plotting, not for archival.

namespace epscalc {

nlohmann::json env_json(const ErrorEnvelope& e);
nlohmann::json jet_json(const Jet1& j);
nlohmann::json box_json(const FunnelBox& b);
nlohmann::json boxes_json(const std::vector<FunnelBox>& bs);
nlohmann::json bracket_json(const IntegralBracket& br);
nlohmann::json tjet_json(const TaylorJet& tj);
nlohmann::json check_json(const CheckRecord& r);
nlohmann::json checks_json(const std::vector<CheckRecord>& rows);

// one record shape for every mean-value style result: op names the
// operation, c_or_L carries the witness point or the limit
nlohmann::json meanvalue_json(const std::string& op, double c_or_L,
                              double residual, const ErrorEnvelope& env, bool pass);

// shortest representation that parses back to the same double
std::string fmt_shortest(double v);
// 6 significant digits, for CSV
std::string fmt_csv(double v);

std::string csv_boxes(const std::vector<FunnelBox>& bs);
std::string csv_checks(const std::vector<CheckRecord>& rows);
std::string csv_bracket(const IntegralBracket& br);
std::string csv_jet(const Jet1& j);
std::string csv_tjet(const TaylorJet& tj);

} // namespace epscalc
