#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tbma::harness {

/// Exit codes: 0 success, 1 runtime/config/IO failure or failed validation,
/// 2 invalid command-line arguments.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tbma::harness
