#pragma once

#include <array>
#include <vector>

#include "bmlab/cell_set.hpp"
#include "bmlab/rational.hpp"

namespace bmlab {

/// The closed half-space { x : normal . x <= offset }.
struct HalfSpace {
  Point normal;
  Rational offset;

  HalfSpace() = default;
  HalfSpace(Point n, Rational b);

  int dim() const { return static_cast<int>(normal.size()); }
  /// Signed slack; <= 0 inside.
  Rational eval(const Point& x) const { return dot(normal, x) - offset; }
  bool contains(const Point& x) const { return eval(x) <= 0; }
  /// The closure of the complement.
  HalfSpace flipped() const;
};

/// Bounded convex polytope with exact rational vertices, dim 1..3.
///
/// Vertices are exactly the extreme points. In 2D they are listed
/// counter-clockwise; otherwise in lexicographic order. Lower-dimensional
/// results (from clipping or degenerate input) are flagged degenerate, carry
/// no facets and have volume zero.
class Polytope {
 public:
  static Polytope empty(int dim);
  static Polytope hull(int dim, std::vector<Point> points);
  static Polytope box(const Point& lo, const Point& hi);

  int dim() const { return dim_; }
  bool is_empty() const { return vertices_.empty(); }
  bool degenerate() const { return degenerate_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<HalfSpace>& facets() const { return facets_; }
  /// Outward-oriented boundary triangulation (3D only), as vertex indices.
  const std::vector<std::array<size_t, 3>>& boundary_triangles() const { return triangles_; }

  /// Membership for full-dimensional polytopes.
  bool contains(const Point& x) const;

 private:
  Polytope(int dim) : dim_(dim) {}

  int dim_ = 0;
  bool degenerate_ = true;
  std::vector<Point> vertices_;
  std::vector<HalfSpace> facets_;
  std::vector<std::array<size_t, 3>> triangles_;

  friend Polytope hull_1d(std::vector<Point>&);
  friend Polytope hull_2d(std::vector<Point>&);
  friend Polytope hull_3d(std::vector<Point>&);
};

/// Exact volume by fan triangulation from the first vertex. Zero if degenerate.
Rational polytope_volume(const Polytope& p);

/// p intersected with h.
Polytope clip_polytope(const Polytope& p, const HalfSpace& h);
Polytope clip_polytope(const Polytope& p, const std::vector<HalfSpace>& hs);

/// Maximum squared distance between two vertices.
Rational diameter_sq(const Polytope& p);

/// Hull of all cell corners.
Polytope convex_hull(const CellSet& s);
/// Hull of the corners of the cells of both sets (same grid).
Polytope convex_hull(const CellSet& a, const CellSet& b);

/// Determinant of the matrix whose rows are the given vectors (dim <= 3).
Rational determinant(const std::vector<Point>& rows);

/// A vector orthogonal to the dim-1 given vectors (generalized cross product).
Point orthogonal_complement(const std::vector<Point>& vectors, int dim);

}  // namespace bmlab
