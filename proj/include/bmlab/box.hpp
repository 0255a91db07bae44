#pragma once

#include <vector>

#include "bmlab/rational.hpp"

namespace bmlab {

/// Closed axis-aligned box [lo, hi] with rational corners.
struct Box {
  Point lo;
  Point hi;

  int dim() const { return static_cast<int>(lo.size()); }
  /// A box with some hi_i <= lo_i has no interior.
  bool degenerate() const {
    for (size_t i = 0; i < lo.size(); ++i)
      if (hi[i] <= lo[i]) return true;
    return false;
  }
  Rational volume() const {
    if (degenerate()) return 0;
    Rational v = 1;
    for (size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }
};

using BoxList = std::vector<Box>;

}  // namespace bmlab
