#pragma once

#include "bmlab/cell_set.hpp"

namespace bmlab {

/// The set tA + (1-t)B, exactly, on the grid of pitch h/q for t = p/q.
///
/// For cells a, b the box t*cell(a) + (1-t)*cell(b) is
/// h/q * (p*a + (q-p)*b) + [0, h]^dim, i.e. a q^dim block of refined cells,
/// so the union is cell-exact. Throws InvalidArgument on grid mismatch.
CellSet minkowski_combine(const CellSet& a, const CellSet& b, const Weight& t);

/// Volume of minkowski_combine(a, b, t) without materializing the cell list.
Rational minkowski_volume(const CellSet& a, const CellSet& b, const Weight& t);

}  // namespace bmlab
