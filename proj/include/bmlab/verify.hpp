#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmlab/oracle.hpp"

namespace bmlab {

struct VerifyOptions {
  /// Replaces each criterion's default instance count.
  std::optional<int> trials;
  std::uint64_t seed = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// Kernel/oracle comparison on the seeded corpus of random pairs, dims 1-3,
/// up to 200 cells, t in {1/2, 1/3, 1/4}. One report per instance.
std::vector<oracle::CrosscheckReport> crosscheck_run(int trials, std::uint64_t seed);

/// oracle, bm, sharp, freiman, box-hull, balancing, partition, sublinearity,
/// steiner, trend, all.
std::vector<std::string> verify_suites();

/// Criterion number of a suite, 0 for "all". Throws InvalidArgument otherwise.
int suite_criterion(const std::string& suite);

/// Runs acceptance criterion 1..10 with its pinned tolerances.
CriterionResult run_criterion(int id, const VerifyOptions& options = {});

std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& options = {});

/// `criterion N [name] PASS|FAIL: detail (s)`.
std::string format_result(const CriterionResult& r);

}  // namespace bmlab
