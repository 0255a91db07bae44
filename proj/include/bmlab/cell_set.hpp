#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bmlab/rational.hpp"

namespace bmlab {

inline constexpr int kMaxExactDim = 3;

/// Lattice of cubes of side `pitch` in R^dim.
struct GridSpec {
  int dim = 1;
  Rational pitch = 1;

  GridSpec() = default;
  GridSpec(int d, Rational h);

  Rational cell_volume() const { return pow(pitch, dim); }
  bool operator==(const GridSpec& o) const { return dim == o.dim && pitch == o.pitch; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

/// Integer cell coordinates. Coordinates beyond the grid dimension are zero.
using Cell = std::array<std::int64_t, kMaxExactDim>;

/// A simple set: the union of the boxes pitch*c + [0, pitch]^dim over its cells.
///
/// Cells are kept sorted lexicographically and are distinct. Boundary-sharing
/// cells are disjoint up to measure zero, which is all any measure here sees.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(GridSpec grid) : grid_(std::move(grid)) {}
  /// Throws InvalidArgument on duplicate cells or nonzero unused coordinates.
  CellSet(GridSpec grid, std::vector<Cell> cells);
  /// Like the constructor but silently merges duplicates.
  static CellSet from_union(GridSpec grid, std::vector<Cell> cells);

  const GridSpec& grid() const { return grid_; }
  int dim() const { return grid_.dim; }
  const Rational& pitch() const { return grid_.pitch; }
  const std::vector<Cell>& cells() const { return cells_; }
  size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  bool contains(const Cell& c) const;

  /// Inclusive bounds of the cell indices. Requires a nonempty set.
  Cell lower() const;
  Cell upper() const;

  /// Lower corner of the realized box of a cell.
  Point corner(const Cell& c) const;
  Point center(const Cell& c) const;

  /// True when the point lies in one of the closed cell boxes.
  bool contains_point(const Point& p) const;

  CellSet translated(const Cell& z) const;
  /// Same point set on the grid of pitch h/k.
  CellSet refined(std::int64_t k) const;
  /// Same point set on the grid of pitch k*h, if every k-block is full or empty.
  std::optional<CellSet> coarsened(std::int64_t k) const;

  bool operator==(const CellSet& o) const { return grid_ == o.grid_ && cells_ == o.cells_; }
  bool operator!=(const CellSet& o) const { return !(*this == o); }

 private:
  GridSpec grid_;
  std::vector<Cell> cells_;
};

Rational volume(const CellSet& s);

/// Re-expresses the set on the coarsest grid reachable by prime-factor coarsening.
CellSet canonicalize(const CellSet& s);

/// Number of cells common to both sets (same grid required).
size_t intersection_count(const CellSet& a, const CellSet& b);

CellSet set_union(const CellSet& a, const CellSet& b);
CellSet set_intersection(const CellSet& a, const CellSet& b);
CellSet set_difference(const CellSet& a, const CellSet& b);

/// Reflects cell coordinates (c -> -c - 1 on the given axis), a lattice isometry.
CellSet reflected(const CellSet& s, int axis);
/// Swaps two coordinate axes.
CellSet transposed(const CellSet& s, int axis_a, int axis_b);

void require_same_grid(const CellSet& a, const CellSet& b, const char* what);

}  // namespace bmlab
