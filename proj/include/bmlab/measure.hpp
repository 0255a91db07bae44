#pragma once

#include <vector>

#include "bmlab/cell_set.hpp"
#include "bmlab/polytope.hpp"

namespace bmlab {

/// Exact |s ∩ p|. Cells fully inside or outside are counted by interval
/// tests (double filter, exact fallback); boundary cells are clipped.
Rational region_measure(const CellSet& s, const Polytope& p);

/// Exact |s ∩ ⋂ hs| for a possibly unbounded intersection of half-spaces.
Rational region_measure(const CellSet& s, const std::vector<HalfSpace>& hs);

/// Exact |A ∩ (B + shift)| for a rational shift vector.
Rational overlap_volume(const CellSet& a, const CellSet& b, const Point& shift);

/// Exact |A △ (B + shift)| = |A| + |B| − 2|A ∩ (B + shift)|.
Rational symdiff_volume(const CellSet& a, const CellSet& b, const Point& shift);

/// Number of cells of b landing on cells of a after a lattice shift z.
size_t overlap_cells(const CellSet& a, const CellSet& b, const Cell& z);

}  // namespace bmlab
