#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epscalc {

// Full command surface, testable without a process boundary. args is argv
// without the program name. Exit code contract: 0 success or pass, 1 a
// verification failed, 2 usage or domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace epscalc
