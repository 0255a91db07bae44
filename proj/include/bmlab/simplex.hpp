#pragma once

#include <vector>

#include "bmlab/polytope.hpp"

namespace bmlab {

/// Nondegenerate simplex with dim+1 rational vertices.
class Simplex {
 public:
  explicit Simplex(std::vector<Point> vertices);

  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const Point& vertex(size_t i) const { return vertices_[i]; }

  Rational volume() const;
  Point barycenter() const;
  /// Barycentric coordinates of x; they sum to 1 and are all > 0 strictly inside.
  std::vector<Rational> barycentric(const Point& x) const;
  bool strictly_contains(const Point& x) const;
  /// Longest edge, squared.
  Rational max_edge_sq() const;

  Polytope polytope() const;
  /// The simplex with vertex i replaced by x.
  Simplex with_vertex(size_t i, const Point& x) const;
  Simplex translated(const Point& v) const;

 private:
  std::vector<Point> vertices_;
  Rational signed_det_;
};

/// The dim+1 cones spanned from an interior apex through the facets of a simplex.
///
/// Cone i is the cone over the facet opposite vertex i; together they cover
/// R^dim with pairwise measure-zero overlaps.
class ConeFrame {
 public:
  ConeFrame(Point apex, Simplex simplex);

  int dim() const { return simplex_.dim(); }
  const Point& apex() const { return apex_; }
  const Simplex& simplex() const { return simplex_; }
  /// Half-space description of cone i (dim half-spaces, all through the apex).
  const std::vector<HalfSpace>& cone(size_t i) const { return cones_[i]; }
  size_t cone_count() const { return cones_.size(); }
  /// Index of a cone containing x (lowest index on shared boundaries).
  size_t locate(const Point& x) const;

  ConeFrame translated(const Point& v) const;

 private:
  Point apex_;
  Simplex simplex_;
  std::vector<std::vector<HalfSpace>> cones_;
};

/// Splits a full-dimensional polytope into simplices (fan from its first vertex).
std::vector<Simplex> triangulate(const Polytope& p);

}  // namespace bmlab
