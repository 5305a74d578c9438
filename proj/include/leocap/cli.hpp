#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace leocap {

// Batch CLI entry point. Exit codes: 0 success, 2 configuration error,
// 3 infeasible scenario.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leocap
