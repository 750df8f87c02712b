#pragma once

#include <string>
#include <vector>

namespace epscalc {

// One row of a verification report: an inequality or identity instantiated at
// a grid point, with both sides and the residual kept for the record.
struct CheckRecord {
    std::string check;
    double grid_point = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool pass = false;
};

inline bool all_pass(const std::vector<CheckRecord>& rows) {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

} // namespace epscalc
