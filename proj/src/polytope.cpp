#include "bmlab/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace bmlab {

HalfSpace::HalfSpace(Point n, Rational b) : normal(std::move(n)), offset(std::move(b)) {
  if (std::all_of(normal.begin(), normal.end(), [](const Rational& r) { return r == 0; }))
    throw InvalidArgument("half-space normal must be nonzero");
}

HalfSpace HalfSpace::flipped() const {
  Point n(normal.size());
  for (size_t i = 0; i < n.size(); ++i) n[i] = -normal[i];
  return HalfSpace(std::move(n), -offset);
}

Rational determinant(const std::vector<Point>& m) {
  switch (m.size()) {
    case 0: return 1;
    case 1: return m[0][0];
    case 2: return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    case 3:
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    default: throw InvalidArgument("determinant supports dimensions up to 3");
  }
}

Point orthogonal_complement(const std::vector<Point>& v, int dim) {
  switch (dim) {
    case 1: return Point{Rational(1)};
    case 2: return Point{-v[0][1], v[0][0]};
    case 3:
      return Point{v[0][1] * v[1][2] - v[0][2] * v[1][1], v[0][2] * v[1][0] - v[0][0] * v[1][2],
                   v[0][0] * v[1][1] - v[0][1] * v[1][0]};
    default: throw InvalidArgument("orthogonal complement supports dimensions up to 3");
  }
}

namespace {

void require_exact_dim(int dim) {
  if (dim < 1 || dim > kMaxExactDim)
    throw InvalidArgument("exact polytopes support dimensions 1..3, got " + std::to_string(dim));
}

Rational cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Rational orient3(const Point& a, const Point& b, const Point& c, const Point& d) {
  return determinant({b - a, c - a, d - a});
}

Point cross3(const Point& u, const Point& v) { return orthogonal_complement({u, v}, 3); }

// Strict counter-clockwise hull of distinct, lexicographically sorted 2D points.
// Returns indices; collinear boundary points are dropped.
std::vector<size_t> monotone_chain(const std::vector<Point>& pts) {
  const size_t n = pts.size();
  if (n <= 1) return n ? std::vector<size_t>{0} : std::vector<size_t>{};
  std::vector<size_t> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

Point normalized_direction(Point n) {
  for (const auto& x : n) {
    if (x != 0) {
      Rational s = abs(x);
      for (auto& y : n) y /= s;
      break;
    }
  }
  return n;
}

void sort_unique(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// Drops coordinate `axis` from each point.
std::vector<Point> project_out(const std::vector<Point>& pts, int axis) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    Point q;
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
      if (i != axis) q.push_back(p[i]);
    out.push_back(std::move(q));
  }
  return out;
}

// Extreme points of a coplanar (in 3D) point set, ordered around the polygon.
std::vector<size_t> planar_hull_indices(const std::vector<Point>& pts, const std::vector<size_t>& idx,
                                        const Point& normal) {
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(normal[i]) > abs(normal[axis])) axis = i;
  std::vector<Point> sub;
  for (auto i : idx) sub.push_back(pts[i]);
  auto proj = project_out(sub, axis);
  std::vector<size_t> order(idx.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return proj[a] < proj[b]; });
  std::vector<Point> sorted;
  for (auto o : order) sorted.push_back(proj[o]);
  std::vector<size_t> h = monotone_chain(sorted);
  std::vector<size_t> out;
  for (auto i : h) out.push_back(idx[order[i]]);
  return out;
}

}  // namespace

Polytope Polytope::empty(int dim) {
  require_exact_dim(dim);
  return Polytope(dim);
}

Polytope hull_1d(std::vector<Point>& pts) {
  Polytope p(1);
  p.vertices_ = {pts.front()};
  if (pts.back() != pts.front()) {
    p.vertices_.push_back(pts.back());
    p.degenerate_ = false;
    p.facets_ = {HalfSpace(Point{Rational(1)}, pts.back()[0]), HalfSpace(Point{Rational(-1)}, -pts.front()[0])};
  }
  return p;
}

Polytope hull_2d(std::vector<Point>& pts) {
  Polytope p(2);
  auto h = monotone_chain(pts);
  if (h.size() < 3) {
    p.vertices_ = {pts.front()};
    if (pts.back() != pts.front()) p.vertices_.push_back(pts.back());
    return p;
  }
  for (auto i : h) p.vertices_.push_back(pts[i]);
  p.degenerate_ = false;
  const size_t n = p.vertices_.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& a = p.vertices_[i];
    const Point& b = p.vertices_[(i + 1) % n];
    Point normal = normalized_direction(Point{b[1] - a[1], a[0] - b[0]});
    Rational off = dot(normal, a);
    p.facets_.emplace_back(std::move(normal), std::move(off));
  }
  return p;
}

Polytope hull_3d(std::vector<Point>& pts) {
  Polytope p(3);
  const size_t n = pts.size();
  // Seed tetrahedron.
  size_t i1 = n, i2 = n, i3 = n;
  for (size_t i = 1; i < n && i1 == n; ++i)
    if (pts[i] != pts[0]) i1 = i;
  if (i1 == n) {
    p.vertices_ = {pts[0]};
    return p;
  }
  Point normal;
  for (size_t i = i1 + 1; i < n && i2 == n; ++i) {
    Point c = cross3(pts[i1] - pts[0], pts[i] - pts[0]);
    if (norm_sq(c) != 0) {
      i2 = i;
      normal = c;
    }
  }
  if (i2 == n) {
    // Collinear: lexicographic order is monotone along the line.
    p.vertices_ = {pts.front(), pts.back()};
    return p;
  }
  for (size_t i = i2 + 1; i < n && i3 == n; ++i)
    if (orient3(pts[0], pts[i1], pts[i2], pts[i]) != 0) i3 = i;
  if (i3 == n) {
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    for (auto i : planar_hull_indices(pts, all, normal)) p.vertices_.push_back(pts[i]);
    std::sort(p.vertices_.begin(), p.vertices_.end());
    return p;
  }

  struct Face {
    size_t a, b, c;
    bool alive;
  };
  std::vector<Face> faces;
  const std::array<size_t, 4> seed{0, i1, i2, i3};
  for (int skip = 0; skip < 4; ++skip) {
    std::array<size_t, 3> f{};
    int k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip) f[k++] = seed[j];
    if (orient3(pts[f[0]], pts[f[1]], pts[f[2]], pts[seed[skip]]) > 0) std::swap(f[1], f[2]);
    faces.push_back({f[0], f[1], f[2], true});
  }

  std::vector<bool> used(n, false);
  for (auto s : seed) used[s] = true;
  for (size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::set<std::pair<size_t, size_t>> edges;
    std::vector<size_t> visible;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      if (orient3(pts[faces[f].a], pts[faces[f].b], pts[faces[f].c], pts[i]) > 0) {
        visible.push_back(f);
        edges.insert({faces[f].a, faces[f].b});
        edges.insert({faces[f].b, faces[f].c});
        edges.insert({faces[f].c, faces[f].a});
      }
    }
    if (visible.empty()) continue;
    for (auto f : visible) faces[f].alive = false;
    for (const auto& [u, v] : edges)
      if (!edges.count({v, u})) faces.push_back({u, v, i, true});
    if (faces.size() > 256 && i % 64 == 0) std::erase_if(faces, [](const Face& f) { return !f.alive; });
  }

  // Group triangles by supporting plane; each group is one facet polygon.
  std::map<std::vector<Rational>, std::vector<size_t>> planes;
  std::map<std::vector<Rational>, Point> plane_normals;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    Point nrm = normalized_direction(cross3(pts[f.b] - pts[f.a], pts[f.c] - pts[f.a]));
    std::vector<Rational> key = nrm;
    key.push_back(dot(nrm, pts[f.a]));
    auto& ids = planes[key];
    ids.push_back(f.a);
    ids.push_back(f.b);
    ids.push_back(f.c);
    plane_normals[key] = nrm;
  }

  std::vector<std::vector<size_t>> polygons;
  std::vector<bool> extreme(n, false);
  for (auto& [key, ids] : planes) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const Point& nrm = plane_normals[key];
    auto poly = planar_hull_indices(pts, ids, nrm);
    if (poly.size() >= 3 && dot(nrm, cross3(pts[poly[1]] - pts[poly[0]], pts[poly[2]] - pts[poly[0]])) < 0)
      std::reverse(poly.begin(), poly.end());
    for (auto v : poly) extreme[v] = true;
    Point fn(nrm.begin(), nrm.end());
    p.facets_.emplace_back(fn, key.back());
    polygons.push_back(std::move(poly));
  }

  std::vector<size_t> remap(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (!extreme[i]) continue;
    remap[i] = p.vertices_.size();
    p.vertices_.push_back(pts[i]);  // pts is sorted, so vertices stay lexicographic
  }
  for (const auto& poly : polygons)
    for (size_t k = 1; k + 1 < poly.size(); ++k)
      p.triangles_.push_back({remap[poly[0]], remap[poly[k]], remap[poly[k + 1]]});
  p.degenerate_ = false;
  return p;
}

Polytope Polytope::hull(int dim, std::vector<Point> points) {
  require_exact_dim(dim);
  for (const auto& q : points)
    if (static_cast<int>(q.size()) != dim) throw InvalidArgument("point dimension mismatch in hull");
  if (points.empty()) return Polytope(dim);
  sort_unique(points);
  switch (dim) {
    case 1: return hull_1d(points);
    case 2: return hull_2d(points);
    default: return hull_3d(points);
  }
}

Polytope Polytope::box(const Point& lo, const Point& hi) {
  const int dim = static_cast<int>(lo.size());
  require_exact_dim(dim);
  std::vector<Point> corners;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Point c(dim);
    for (int i = 0; i < dim; ++i) c[i] = ((mask >> i) & 1) ? hi[i] : lo[i];
    corners.push_back(std::move(c));
  }
  return hull(dim, std::move(corners));
}

bool Polytope::contains(const Point& x) const {
  if (degenerate_) return std::find(vertices_.begin(), vertices_.end(), x) != vertices_.end();
  return std::all_of(facets_.begin(), facets_.end(), [&](const HalfSpace& h) { return h.contains(x); });
}

Rational polytope_volume(const Polytope& p) {
  require_exact_dim(p.dim());
  if (p.is_empty() || p.degenerate()) return 0;
  const auto& v = p.vertices();
  switch (p.dim()) {
    case 1: return v.back()[0] - v.front()[0];
    case 2: {
      Rational twice = 0;
      for (size_t i = 1; i + 1 < v.size(); ++i) twice += cross2(v[0], v[i], v[i + 1]);
      return abs(twice) / 2;
    }
    default: {
      Rational six = 0;
      for (const auto& t : p.boundary_triangles()) six += determinant({v[t[0]] - v[0], v[t[1]] - v[0], v[t[2]] - v[0]});
      return abs(six) / 6;
    }
  }
}

Polytope clip_polytope(const Polytope& p, const HalfSpace& h) {
  if (h.dim() != p.dim()) throw InvalidArgument("half-space dimension mismatch in clip");
  if (p.is_empty()) return p;
  const auto& v = p.vertices();
  std::vector<Rational> s(v.size());
  bool any_in = false, any_out = false;
  for (size_t i = 0; i < v.size(); ++i) {
    s[i] = h.eval(v[i]);
    if (s[i] <= 0) any_in = true;
    if (s[i] > 0) any_out = true;
  }
  if (!any_out) return p;
  if (!any_in) return Polytope::empty(p.dim());
  // Every vertex of the clipped body is a kept vertex or an edge/plane crossing;
  // crossings of non-edge pairs lie inside the clipped body and vanish in the hull.
  std::vector<Point> pts;
  for (size_t i = 0; i < v.size(); ++i)
    if (s[i] <= 0) pts.push_back(v[i]);
  for (size_t i = 0; i < v.size(); ++i) {
    if (s[i] >= 0) continue;
    for (size_t j = 0; j < v.size(); ++j) {
      if (s[j] <= 0) continue;
      Rational lambda = s[i] / (s[i] - s[j]);
      pts.push_back(v[i] + lambda * (v[j] - v[i]));
    }
  }
  return Polytope::hull(p.dim(), std::move(pts));
}

Polytope clip_polytope(const Polytope& p, const std::vector<HalfSpace>& hs) {
  Polytope out = p;
  for (const auto& h : hs) {
    if (out.is_empty()) break;
    out = clip_polytope(out, h);
  }
  return out;
}

Rational diameter_sq(const Polytope& p) {
  if (p.is_empty()) throw InvalidArgument("diameter of an empty polytope");
  Rational best = 0;
  const auto& v = p.vertices();
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) best = std::max(best, dist_sq(v[i], v[j]));
  return best;
}

namespace {

// Corner points of the cells that can be extreme: for every line along the last
// axis only the lowest and highest corner matter.
std::vector<Point> candidate_corners(const std::vector<const CellSet*>& sets) {
  const CellSet& first = *sets.front();
  const int d = first.dim();
  std::map<std::array<std::int64_t, kMaxExactDim - 1>, std::pair<std::int64_t, std::int64_t>> lines;
  for (const CellSet* s : sets) {
    for (const auto& c : s->cells()) {
      for (int mask = 0; mask < (1 << (d - 1)); ++mask) {
        std::array<std::int64_t, kMaxExactDim - 1> key{};
        for (int i = 0; i + 1 < d; ++i) key[i] = c[i] + ((mask >> i) & 1);
        auto lo = c[d - 1], hi = c[d - 1] + 1;
        auto [it, inserted] = lines.try_emplace(key, lo, hi);
        if (!inserted) {
          it->second.first = std::min(it->second.first, lo);
          it->second.second = std::max(it->second.second, hi);
        }
      }
    }
  }
  std::vector<Point> pts;
  const Rational& h = first.pitch();
  for (const auto& [key, range] : lines) {
    for (auto z : {range.first, range.second}) {
      Point q(d);
      for (int i = 0; i + 1 < d; ++i) q[i] = h * Rational(static_cast<long>(key[i]));
      q[d - 1] = h * Rational(static_cast<long>(z));
      pts.push_back(std::move(q));
    }
  }
  return pts;
}

}  // namespace

Polytope convex_hull(const CellSet& s) {
  if (s.empty()) throw InvalidArgument("convex hull of an empty cell set");
  return Polytope::hull(s.dim(), candidate_corners({&s}));
}

Polytope convex_hull(const CellSet& a, const CellSet& b) {
  require_same_grid(a, b, "convex_hull");
  if (a.empty() && b.empty()) throw InvalidArgument("convex hull of empty cell sets");
  std::vector<const CellSet*> sets;
  if (!a.empty()) sets.push_back(&a);
  if (!b.empty()) sets.push_back(&b);
  return Polytope::hull(a.dim(), candidate_corners(sets));
}

}  // namespace bmlab
