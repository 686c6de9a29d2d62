#pragma once

#include "io.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stabpair::cli {

struct RunConfig {
  std::string input;
  std::string poly, pair, curve, sigma, lambda;
  std::string p = "0";
  std::optional<int> m;
  std::string k;
  int samples = 200000;
  std::uint64_t seed = 0;
  std::optional<int> restarts;
  int threads = 1;
  std::string mode = "exact";
  bool text = false;
  std::vector<std::string> suites;
};

/// Result document plus exit status (1 for a failed verification).
struct CommandOutput {
  Json result;
  int status = 0;
};

struct CommandSpec {
  std::string name;
  std::string summary;
  /// Module operations reachable from this subcommand.
  std::vector<std::string> operations;
  std::function<CommandOutput(const RunConfig&)> handler;
};

const std::vector<CommandSpec>& command_table();

/// Every public module operation, by module.
const std::vector<std::pair<std::string, std::vector<std::string>>>& module_operations();

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stabpair::cli
