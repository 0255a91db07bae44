#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmlab/deficits.hpp"

namespace bmlab {

struct ScenarioSpec {
  std::string name;
  int dim = 2;
  Rational t = Rational(1, 2);
  /// Family default when unset.
  std::optional<Rational> pitch;
  /// Pitches for the sharp family; defaults to 2^-1 .. 2^-6.
  std::vector<Rational> h_list;
  int trials = 10;
  std::uint64_t seed = 0;
  /// Fill runtime_ms; off by default so output is byte-stable.
  bool timing = false;
};

struct ScenarioRow {
  DeficitReport report;
  /// Family-specific columns, in the order of ScenarioResult::extra_columns.
  std::vector<std::string> extra;
};

struct ScenarioResult {
  std::string name;
  std::vector<std::string> extra_columns;
  std::vector<ScenarioRow> rows;
  /// Violated hard assertions, one message each.
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Families: sharp-family, freiman1d, box-hull, perturbed-convex, intconvex.
std::vector<std::string> scenario_names();

/// Throws InvalidArgument for unknown families or infeasible parameters.
ScenarioResult run_scenario(const ScenarioSpec& spec);

/// Deficit columns followed by the family columns.
std::string scenario_csv(const ScenarioResult& result);

/// `log_delta log_symdiff` per row with both positive, for slope fits.
std::string plot_data(const ScenarioResult& result);

/// Writes the CSV and, when plot_path is nonempty, the plot data.
/// Throws InvalidArgument on empty results or I/O failure.
void emit_report(const ScenarioResult& result, const std::string& csv_path, const std::string& plot_path);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<std::pair<double, double>>& xy);

}  // namespace bmlab
