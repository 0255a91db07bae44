#include "bmlab/measure.hpp"

#include <algorithm>
#include <cmath>

#include "raster.hpp"

namespace bmlab {

namespace {

enum class Side { inside, outside, cut };

struct FilteredHalfSpace {
  const HalfSpace* exact;
  std::vector<double> normal;
  double offset;
};

// Range of normal.x - offset over the box [lo, lo + h]^d.
Side classify_exact(const HalfSpace& hs, const Point& lo, const Rational& h) {
  Rational base = hs.eval(lo), lo_extra = 0, hi_extra = 0;
  for (size_t i = 0; i < lo.size(); ++i) {
    if (hs.normal[i] < 0) lo_extra += hs.normal[i] * h;
    else hi_extra += hs.normal[i] * h;
  }
  if (base + hi_extra <= 0) return Side::inside;
  if (base + lo_extra >= 0) return Side::outside;
  return Side::cut;
}

Side classify(const FilteredHalfSpace& f, const Point& lo_exact, const std::vector<double>& lo, double h,
              const Rational& h_exact) {
  double base = -f.offset, lo_extra = 0, hi_extra = 0, mag = std::fabs(f.offset);
  for (size_t i = 0; i < lo.size(); ++i) {
    base += f.normal[i] * lo[i];
    mag += std::fabs(f.normal[i]) * (std::fabs(lo[i]) + h);
    if (f.normal[i] < 0) lo_extra += f.normal[i] * h;
    else hi_extra += f.normal[i] * h;
  }
  const double margin = 1e-10 * mag + 1e-300;
  if (base + hi_extra < -margin) return Side::inside;
  if (base + lo_extra > margin) return Side::outside;
  return classify_exact(*f.exact, lo_exact, h_exact);
}

/// n . y <= b on the unit cell, with n integral.
struct UnitCut {
  Point normal;
  Rational offset;
};

using Face = std::vector<Point>;

Point cross3(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<Face> unit_cube_faces() {
  std::vector<Face> faces;
  for (int axis = 0; axis < 3; ++axis)
    for (int side = 0; side < 2; ++side) {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      Face f;
      for (auto [a, b] : {std::pair{0, 0}, {1, 0}, {1, 1}, {0, 1}}) {
        Point p(3, Rational(0));
        p[axis] = side;
        p[u] = a;
        p[v] = b;
        f.push_back(std::move(p));
      }
      // (u, v) is counter-clockwise seen from +axis.
      if (side == 0) std::reverse(f.begin(), f.end());
      faces.push_back(std::move(f));
    }
  return faces;
}

/// Clips a closed polygon (2D) or the faces of a convex polyhedron (3D) by one cut.
Face clip_face(const Face& f, const UnitCut& c, std::vector<Point>& on_plane) {
  Face out;
  const size_t m = f.size();
  std::vector<Rational> e(m);
  for (size_t i = 0; i < m; ++i) e[i] = dot(c.normal, f[i]) - c.offset;
  for (size_t i = 0; i < m; ++i) {
    const Point& p = f[i];
    const Point& q = f[(i + 1) % m];
    const Rational& ep = e[i];
    const Rational& eq = e[(i + 1) % m];
    if (ep <= 0) {
      out.push_back(p);
      if (ep == 0) on_plane.push_back(p);
    }
    if ((ep < 0 && eq > 0) || (ep > 0 && eq < 0)) {
      const Rational w = ep / (ep - eq);
      Point x = p + w * (q - p);
      on_plane.push_back(x);
      out.push_back(std::move(x));
    }
  }
  return out;
}

/// The cap polygon in the cutting plane, counter-clockwise seen from +normal.
Face cap_face(std::vector<Point> pts, const Point& normal) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return {};
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (abs(normal[i]) > abs(normal[k])) k = i;
  const int u = (k + 1) % 3, v = (k + 2) % 3;
  Rational cu = 0, cv = 0;
  for (const auto& p : pts) {
    cu += p[u];
    cv += p[v];
  }
  cu /= static_cast<long>(pts.size());
  cv /= static_cast<long>(pts.size());
  auto half = [&](const Point& p) {
    const int sy = sgn(p[v] - cv);
    return sy > 0 || (sy == 0 && p[u] > cu) ? 0 : 1;
  };
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return (a[u] - cu) * (b[v] - cv) - (a[v] - cv) * (b[u] - cu) > 0;
  });
  // Projection along k keeps orientation when normal[k] > 0.
  if (normal[k] < 0) std::reverse(pts.begin(), pts.end());
  return pts;
}

Rational unit_clip_volume(int d, const std::vector<UnitCut>& cuts) {
  if (d == 1) {
    Rational lo = 0, hi = 1;
    for (const auto& c : cuts) {
      const Rational x = c.offset / c.normal[0];
      if (c.normal[0] > 0) hi = std::min(hi, x);
      else lo = std::max(lo, x);
    }
    return hi > lo ? Rational(hi - lo) : Rational(0);
  }
  if (d == 2) {
    Face poly{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    std::vector<Point> unused;
    for (const auto& c : cuts) {
      poly = clip_face(poly, c, unused);
      if (poly.size() < 3) return 0;
    }
    Rational area = 0;
    for (size_t i = 0; i < poly.size(); ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % poly.size()];
      area += p[0] * q[1] - p[1] * q[0];
    }
    return area / 2;
  }
  std::vector<Face> faces = unit_cube_faces();
  for (const auto& c : cuts) {
    Rational lo = 0, hi = 0;
    bool first = true;
    for (const auto& f : faces)
      for (const auto& p : f) {
        const Rational e = dot(c.normal, p) - c.offset;
        if (first || e < lo) lo = e;
        if (first || e > hi) hi = e;
        first = false;
      }
    if (hi <= 0) continue;
    if (lo >= 0) return 0;
    std::vector<Face> next;
    std::vector<Point> on_plane;
    for (const auto& f : faces) {
      Face g = clip_face(f, c, on_plane);
      if (g.size() >= 3) next.push_back(std::move(g));
    }
    Face cap = cap_face(std::move(on_plane), c.normal);
    if (!cap.empty()) next.push_back(std::move(cap));
    faces = std::move(next);
    if (faces.size() < 4) return 0;
  }
  Rational six = 0;
  for (const auto& f : faces)
    for (size_t i = 1; i + 1 < f.size(); ++i) six += dot(f[0], cross3(f[i], f[i + 1]));
  return six / 6;
}

/// The cut in coordinates y with x = lo + h y, scaled to an integral normal.
UnitCut to_unit(const HalfSpace& hs, const Point& lo, const Rational& h) {
  mpz_class l = 1;
  for (const auto& n : hs.normal) l = lcm(l, n.get_den());
  UnitCut c;
  for (const auto& n : hs.normal) c.normal.push_back(Rational(n * l));
  c.offset = Rational(hs.eval(lo) * -l / h);
  return c;
}

}  // namespace

Rational region_measure(const CellSet& s, const std::vector<HalfSpace>& hs) {
  const int d = s.dim();
  for (const auto& h : hs)
    if (h.dim() != d) throw InvalidArgument("region_measure: half-space dimension mismatch");
  if (d > kMaxExactDim) throw InvalidArgument("region_measure: dim > 3");

  std::vector<FilteredHalfSpace> filt;
  for (const auto& h : hs) {
    FilteredHalfSpace f{&h, {}, to_double(h.offset)};
    for (const auto& n : h.normal) f.normal.push_back(to_double(n));
    filt.push_back(std::move(f));
  }

  const Rational& h = s.pitch();
  const double hd = to_double(h);
  const Rational cell_vol = s.grid().cell_volume();
  size_t full = 0;
  Rational partial = 0;
  std::vector<double> lo(d);
  for (const auto& c : s.cells()) {
    for (int i = 0; i < d; ++i) lo[i] = static_cast<double>(c[i]) * hd;
    const Point lo_exact = s.corner(c);
    std::vector<const HalfSpace*> cutting;
    bool outside = false;
    for (const auto& f : filt) {
      Side side = classify(f, lo_exact, lo, hd, h);
      if (side == Side::outside) { outside = true; break; }
      if (side == Side::cut) cutting.push_back(f.exact);
    }
    if (outside) continue;
    if (cutting.empty()) { ++full; continue; }
    std::vector<UnitCut> cuts;
    for (const auto* hp : cutting) cuts.push_back(to_unit(*hp, lo_exact, h));
    partial += unit_clip_volume(d, cuts) * cell_vol;
  }
  return Rational(static_cast<long>(full)) * cell_vol + partial;
}

Rational region_measure(const CellSet& s, const Polytope& p) {
  if (p.dim() != s.dim()) throw InvalidArgument("region_measure: polytope dimension mismatch");
  if (p.is_empty() || p.degenerate() || s.empty()) return 0;
  return region_measure(s, p.facets());
}

size_t overlap_cells(const CellSet& a, const CellSet& b, const Cell& z) {
  require_same_grid(a, b, "overlap_cells");
  if (a.empty() || b.empty()) return 0;
  return detail::overlap_count(detail::Raster::from_cells(a), detail::Raster::from_cells(b), z);
}

Rational overlap_volume(const CellSet& a, const CellSet& b, const Point& shift) {
  require_same_grid(a, b, "overlap_volume");
  const int d = a.dim();
  if (static_cast<int>(shift.size()) != d) throw InvalidArgument("overlap_volume: shift dimension mismatch");
  if (a.empty() || b.empty()) return 0;

  // shift / h = k + f with integer k and 0 <= f < 1 per coordinate.
  Cell k{};
  std::vector<Rational> f(d);
  for (int i = 0; i < d; ++i) {
    Rational u = shift[i] / a.pitch();
    const mpz_class fl = floor(u);
    k[i] = fl.get_si();
    f[i] = u - Rational(fl);
  }

  const auto ra = detail::Raster::from_cells(a);
  const auto rb = detail::Raster::from_cells(b);
  Rational total = 0;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Rational w = 1;
    Cell z = k;
    for (int i = 0; i < d; ++i) {
      if (mask >> i & 1) { w *= f[i]; ++z[i]; }
      else w *= Rational(1) - f[i];
    }
    if (w == 0) continue;
    total += w * Rational(static_cast<long>(detail::overlap_count(ra, rb, z)));
  }
  return total * a.grid().cell_volume();
}

Rational symdiff_volume(const CellSet& a, const CellSet& b, const Point& shift) {
  return volume(a) + volume(b) - 2 * overlap_volume(a, b, shift);
}

}  // namespace bmlab
