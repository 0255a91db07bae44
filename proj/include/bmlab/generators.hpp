#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "bmlab/box.hpp"
#include "bmlab/cell_set.hpp"

namespace bmlab::gen {

/// Independent stream for instance `index` of a run seeded with `seed`.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [lo, hi].
std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

/// The cells of the box lo + [0, size).
CellSet box_cells(const GridSpec& grid, const Cell& lo, const Cell& size);

/// Connected random set of n cells grown from the origin cell.
CellSet random_blob(std::mt19937_64& rng, const GridSpec& grid, size_t n);

/// Cells whose centers lie in the ellipse (or ellipsoid) with the given
/// center, semi-axes and, in 2D, rotation angle.
CellSet ellipse_cells(const GridSpec& grid, const std::array<double, 3>& center, const std::array<double, 3>& radii,
                      double angle = 0);

/// Keeps the n cells closest to `center` (ties lexicographic).
CellSet trim_to(const CellSet& s, size_t n, const std::array<double, 3>& center);

/// Sharp pair: A = [0, 1+h] x [0, 1]^(d-1) at pitch h, B = A with the first two axes swapped.
std::pair<CellSet, CellSet> sharp_pair(const Rational& h, int dim = 2);

/// Random 1D equal-volume pair: a run of cells with a few small gaps.
std::pair<CellSet, CellSet> near_interval_pair(std::mt19937_64& rng, const Rational& pitch, size_t max_cells);

/// Random intersecting boxes with corners on the lattice of pitch 1/den.
std::pair<Box, Box> random_box_pair(std::mt19937_64& rng, int dim, std::int64_t den = 8);

/// [0, 1+u] x [0, 1] minus a block of side `block` cells at the far corner, u = j h,
/// and its transpose.
std::pair<CellSet, CellSet> perturbed_convex_pair(const Rational& h, std::int64_t j, std::int64_t block);

/// Random equal-volume pair of blobs, up to max_cells each.
std::pair<CellSet, CellSet> random_equal_pair(std::mt19937_64& rng, int dim, size_t max_cells, const Rational& pitch);

}  // namespace bmlab::gen
