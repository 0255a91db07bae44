#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bmlab/box.hpp"
#include "bmlab/cell_set.hpp"
#include "bmlab/polytope.hpp"

namespace bmlab {

/// |tA + (1-t)B| / |A| - 1. Requires |A| = |B| > 0.
Rational delta_t(const CellSet& a, const CellSet& b, const Weight& t);

/// |co(A)| - |A|. Requires a nonempty set.
Rational hull_gap(const CellSet& a);

struct HullRatio {
  Rational lhs;  ///< |co(X ∪ Y)| / min(|X|, |Y|) - 1
  Rational rhs;  ///< |X △ Y| / |X ∩ Y|
};

/// Both sides of the common-hull comparison. Requires |X ∩ Y| > 0.
HullRatio common_hull_ratio(const CellSet& x, const CellSet& y);

/// Translation search protocol for optimal_translation_symdiff.
struct ScanSpec {
  /// The scan lattice has pitch h / subdivisions.
  std::int64_t subdivisions = 1;
  /// Per-coordinate ternary refinement rounds around the scan optimum.
  int refine_rounds = 12;
};

struct TranslationResult {
  Point shift;
  Rational symdiff;
  Rational overlap;
};

/// Minimizes |A △ (B + x)| over the scan lattice, then refines each
/// coordinate. Ties: larger overlap, then smaller |x|, then lexicographic.
TranslationResult optimal_translation_symdiff(const CellSet& a, const CellSet& b, const ScanSpec& scan = {});

struct FreimanReport {
  Rational delta;
  Rational gap_a;
  Rational gap_b;
  Rational bound_a;  ///< δ|A| / t
  Rational bound_b;  ///< δ|B| / (1 - t)
  bool applicable = false;  ///< δ < min(t, 1 - t)
  bool holds_a = false;
  bool holds_b = false;

  bool holds() const { return holds_a && holds_b; }
};

/// The one-dimensional hull bounds. When δ >= min(t, 1-t) the comparisons are
/// still computed but the report is flagged as not applicable.
FreimanReport freiman_check_1d(const CellSet& a, const CellSet& b, const Weight& t);

struct BoxHullReport {
  Rational lhs;  ///< |co(R ∪ T)|
  Rational rhs;  ///< 2^n |R| |T| / |R ∩ T|
  bool holds = false;
};

/// Throws InvalidArgument when the boxes do not overlap in volume.
BoxHullReport box_hull_bound_check(const Box& r, const Box& t);

struct LambdaReport {
  Rational r_inner;  ///< largest r (to bisection precision) with rS inside both sets
  Rational r_outer;  ///< smallest R with both sets inside RS
  Rational lambda;   ///< r_outer / r_inner
};

/// The simplex with vertices 0, e_1, .., e_d moved so its barycenter is the origin.
std::vector<Point> centered_simplex(int dim);

/// λ-boundedness diagnostic of a pair relative to centered_simplex, after
/// translating both by `center`. Throws InvalidArgument when the origin is
/// not inside both sets.
LambdaReport lambda_boundedness(const CellSet& x, const CellSet& y, const Point& center, int bisection_steps = 40);

/// All stability functionals of one instance.
struct DeficitReport {
  std::string scenario_id;
  int dim = 0;
  Rational t;
  Rational pitch;
  Rational vol_a;
  Rational vol_b;
  std::optional<Rational> delta_t;  ///< only for equal volumes
  std::optional<Rational> hull_gap_a;
  std::optional<Rational> hull_gap_b;
  std::optional<Rational> hull_ratio;  ///< |co(A ∪ (B + x))| / min(|A|, |B|) at the optimal shift x
  std::optional<Rational> symdiff_opt;
  Point shift;
  double runtime_ms = 0;
};

/// Fills every field that applies. Delta and hull ratio need equal volumes.
DeficitReport deficit_report(const CellSet& a, const CellSet& b, const Weight& t, std::string scenario_id = "",
                             const ScanSpec& scan = {});

std::string deficit_csv_header();
std::string deficit_csv_row(const DeficitReport& r);

}  // namespace bmlab
