#pragma once

#include <stdexcept>
#include <string>

namespace leocap {

// Bad scenario/CLI configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid configuration that cannot produce a result
// (degenerate population grid, zero ground-station budget, no reachable
// sessions). The CLI maps this to exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace leocap
