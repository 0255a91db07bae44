#pragma once

#include <initializer_list>
#include <vector>

#include "bmlab/cell_set.hpp"
#include "bmlab/rational.hpp"

namespace bmlab::test {

inline Rational q(long num, long den = 1) { return fraction(num, den); }

inline Point pt(std::initializer_list<Rational> xs) { return Point(xs); }

inline CellSet cells(int dim, const Rational& pitch, std::vector<Cell> cs) {
  return CellSet(GridSpec(dim, pitch), std::move(cs));
}

/// Cells of the box lo + [0, size) on the given grid.
inline CellSet block(int dim, const Rational& pitch, Cell lo, Cell size) {
  std::vector<Cell> out;
  for (std::int64_t x = 0; x < (dim > 0 ? size[0] : 1); ++x)
    for (std::int64_t y = 0; y < (dim > 1 ? size[1] : 1); ++y)
      for (std::int64_t z = 0; z < (dim > 2 ? size[2] : 1); ++z) {
        Cell c{lo[0] + x, dim > 1 ? lo[1] + y : 0, dim > 2 ? lo[2] + z : 0};
        out.push_back(c);
      }
  return CellSet(GridSpec(dim, pitch), std::move(out));
}

/// The L-shape (0,0), (1,0), (0,1) at pitch 1.
inline CellSet l_shape() { return cells(2, 1, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}); }

}  // namespace bmlab::test
