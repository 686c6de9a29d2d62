#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace stabpair {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  /// Monte Carlo samples per norm estimate.
  int samples = 200000;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string suite;
  bool passed = false;
  std::string summary;
  /// Named measurements (worst margins, counts, timings).
  std::vector<std::pair<std::string, double>> metrics;
  double seconds = 0.0;
};

/// Suites: norms {1,2,3}, weights {4,8}, forms {5,13}, pairs {6,7,9}, energy {10,11,12}.
const std::vector<std::string>& verify_suites();
std::vector<int> criteria_of_suite(const std::string& suite);

CriterionResult run_criterion(int id, const VerifyOptions& opts);
std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& opts);

/// "PASS  3 jensen-ordering  ..." style line.
std::string format_line(const CriterionResult& r);

}  // namespace stabpair
