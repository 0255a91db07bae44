#include "bmlab/simplex.hpp"

#include <string>

namespace bmlab {

namespace {

Rational signed_det(const std::vector<Point>& v) {
  std::vector<Point> rows;
  for (size_t i = 1; i < v.size(); ++i) rows.push_back(v[i] - v[0]);
  return determinant(rows);
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const int d = dim();
  if (d < 1 || d > kMaxExactDim) throw InvalidArgument("simplex needs 2..4 vertices");
  for (const auto& v : vertices_)
    if (static_cast<int>(v.size()) != d) throw InvalidArgument("simplex vertex dimension mismatch");
  signed_det_ = signed_det(vertices_);
  if (signed_det_ == 0) throw InvalidArgument("degenerate simplex");
}

Rational Simplex::volume() const { return abs(signed_det_) / factorial(dim()); }

Point Simplex::barycenter() const {
  Point c = zero_point(dim());
  for (const auto& v : vertices_) c = c + v;
  return Rational(1, dim() + 1) * c;
}

std::vector<Rational> Simplex::barycentric(const Point& x) const {
  std::vector<Rational> out;
  out.reserve(vertices_.size());
  for (size_t i = 0; i < vertices_.size(); ++i) {
    auto v = vertices_;
    v[i] = x;
    out.push_back(signed_det(v) / signed_det_);
  }
  return out;
}

bool Simplex::strictly_contains(const Point& x) const {
  for (const auto& l : barycentric(x))
    if (l <= 0) return false;
  return true;
}

Rational Simplex::max_edge_sq() const {
  Rational best = 0;
  for (size_t i = 0; i < vertices_.size(); ++i)
    for (size_t j = i + 1; j < vertices_.size(); ++j) best = std::max(best, dist_sq(vertices_[i], vertices_[j]));
  return best;
}

Polytope Simplex::polytope() const { return Polytope::hull(dim(), vertices_); }

Simplex Simplex::with_vertex(size_t i, const Point& x) const {
  auto v = vertices_;
  v[i] = x;
  return Simplex(std::move(v));
}

Simplex Simplex::translated(const Point& shift) const {
  auto v = vertices_;
  for (auto& p : v) p = p + shift;
  return Simplex(std::move(v));
}

ConeFrame::ConeFrame(Point apex, Simplex simplex) : apex_(std::move(apex)), simplex_(std::move(simplex)) {
  const int d = simplex_.dim();
  if (static_cast<int>(apex_.size()) != d) throw InvalidArgument("cone frame apex dimension mismatch");
  if (!simplex_.strictly_contains(apex_)) throw InvalidArgument("cone frame apex must be strictly inside the simplex");
  const auto& v = simplex_.vertices();
  for (size_t i = 0; i <= static_cast<size_t>(d); ++i) {
    std::vector<HalfSpace> cone;
    for (size_t j = 0; j <= static_cast<size_t>(d); ++j) {
      if (j == i) continue;
      // Hyperplane through the apex and the vertices other than i and j,
      // oriented so that vertex j is inside.
      std::vector<Point> span;
      for (size_t k = 0; k <= static_cast<size_t>(d); ++k)
        if (k != i && k != j) span.push_back(v[k] - apex_);
      Point n = orthogonal_complement(span, d);
      if (dot(n, v[j] - apex_) > 0) n = Rational(-1) * n;
      Rational off = dot(n, apex_);
      cone.emplace_back(std::move(n), std::move(off));
    }
    cones_.push_back(std::move(cone));
  }
}

size_t ConeFrame::locate(const Point& x) const {
  for (size_t i = 0; i < cones_.size(); ++i) {
    bool in = true;
    for (const auto& h : cones_[i])
      if (!h.contains(x)) { in = false; break; }
    if (in) return i;
  }
  throw InvalidArgument("point not covered by cone frame");  // unreachable for a valid frame
}

ConeFrame ConeFrame::translated(const Point& shift) const {
  return ConeFrame(apex_ + shift, simplex_.translated(shift));
}

std::vector<Simplex> triangulate(const Polytope& p) {
  if (p.is_empty() || p.degenerate()) return {};
  const auto& v = p.vertices();
  std::vector<Simplex> out;
  switch (p.dim()) {
    case 1: out.emplace_back(std::vector<Point>{v.front(), v.back()}); break;
    case 2:
      for (size_t i = 1; i + 1 < v.size(); ++i) out.emplace_back(std::vector<Point>{v[0], v[i], v[i + 1]});
      break;
    default:
      for (const auto& t : p.boundary_triangles()) {
        if (t[0] == 0 || t[1] == 0 || t[2] == 0) continue;
        std::vector<Point> tet{v[0], v[t[0]], v[t[1]], v[t[2]]};
        if (signed_det(tet) != 0) out.emplace_back(std::move(tet));
      }
  }
  return out;
}

}  // namespace bmlab
