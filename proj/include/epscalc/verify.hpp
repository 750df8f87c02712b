#pragma once

#include <string>
#include <vector>

#include "epscalc/report.hpp"

namespace epscalc {

// Named self-check suites, all reference-free: identities, inequalities, and
// cross-module closures evaluated by the engine against itself. Library
// transcendentals appear nowhere here; external oracles belong to the test
// code, not the product.
//
// Suites: envelope, rules, trig, hyperbolic, exp, meanvalue, taylor, ftc,
// and all (concatenation in that order). Unknown names throw DomainError.
std::vector<CheckRecord> run_suite(const std::string& suite, double tol = 1e-9);

const std::vector<std::string>& suite_names();

} // namespace epscalc
