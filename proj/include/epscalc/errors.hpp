#pragma once

#include <stdexcept>
#include <string>

namespace epscalc {

// Domain/usage problems: bad arguments, preconditions violated, parse errors.
// The CLI maps these to exit code 2.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A certification that was supposed to hold did not (grid violation, NaN
// sample, radius collapse, tolerance unreachable). CLI exit code 1.
struct CertificationError : std::runtime_error {
    explicit CertificationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : DomainError {
    ParseError(const std::string& msg, std::size_t at) : DomainError(msg), offset(at) {}
    std::size_t offset;
};

} // namespace epscalc
