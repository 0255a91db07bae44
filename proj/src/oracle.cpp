#include "bmlab/oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "bmlab/deficits.hpp"
#include "bmlab/measure.hpp"
#include "bmlab/minkowski.hpp"

namespace bmlab::oracle {

namespace {

// ---- union volume ----

template <class T>
struct IBox {
  std::array<T, kMaxExactDim> lo{};
  std::array<T, kMaxExactDim> hi{};
  bool operator<(const IBox& o) const { return std::tie(lo, hi) < std::tie(o.lo, o.hi); }
  bool operator==(const IBox& o) const { return lo == o.lo && hi == o.hi; }
};

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
const mpz_class& to_mpz(const mpz_class& v) { return v; }

template <class T>
mpz_class sweep(const std::vector<IBox<T>>& boxes, const std::vector<size_t>& idx, int axis, int dim) {
  if (axis == dim - 1) {
    std::vector<std::pair<T, T>> iv;
    for (size_t i : idx) iv.emplace_back(boxes[i].lo[axis], boxes[i].hi[axis]);
    std::sort(iv.begin(), iv.end());
    mpz_class total = 0;
    T cur_lo = iv.front().first, cur_hi = iv.front().second;
    for (size_t k = 1; k < iv.size(); ++k) {
      if (iv[k].first > cur_hi) {
        total += to_mpz(T(cur_hi - cur_lo));
        cur_lo = iv[k].first;
        cur_hi = iv[k].second;
      } else if (iv[k].second > cur_hi) {
        cur_hi = iv[k].second;
      }
    }
    return total + to_mpz(T(cur_hi - cur_lo));
  }
  std::vector<T> coords;
  for (size_t i : idx) {
    coords.push_back(boxes[i].lo[axis]);
    coords.push_back(boxes[i].hi[axis]);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  mpz_class total = 0;
  std::vector<size_t> sub;
  for (size_t k = 0; k + 1 < coords.size(); ++k) {
    sub.clear();
    for (size_t i : idx)
      if (boxes[i].lo[axis] <= coords[k] && boxes[i].hi[axis] >= coords[k + 1]) sub.push_back(i);
    if (!sub.empty()) total += to_mpz(T(coords[k + 1] - coords[k])) * sweep(boxes, sub, axis + 1, dim);
  }
  return total;
}

template <class T>
mpz_class sweep_all(std::vector<IBox<T>> boxes, int dim) {
  std::sort(boxes.begin(), boxes.end());
  boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
  std::vector<size_t> idx(boxes.size());
  std::iota(idx.begin(), idx.end(), 0);
  return sweep(boxes, idx, 0, dim);
}

// ---- hulls on integer points ----

using IPoint = std::array<std::int64_t, 3>;

IPoint sub(const IPoint& a, const IPoint& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
IPoint cross(const IPoint& a, const IPoint& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
std::int64_t dot(const IPoint& a, const IPoint& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Supporting plane n.x <= off.
struct IPlane {
  IPoint n;
  std::int64_t off;
  bool operator<(const IPlane& o) const { return std::tie(n, off) < std::tie(o.n, o.off); }
};

IPlane canonical(IPoint n, const IPoint& p) {
  std::int64_t g = 0;
  for (auto x : n) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (auto& x : n) x /= g;
  return {n, dot(n, p)};
}

struct IHull {
  std::vector<IPlane> planes;
  mpz_class volume;  // times dim! (2x area, 6x volume) in integer units
};

// Counter-clockwise boundary of coplanar points as seen from the tip of n.
std::vector<IPoint> jarvis(std::vector<IPoint> pts, const IPoint& n) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<IPoint> ring;
  const IPoint start = pts.front();
  IPoint cur = start;
  do {
    ring.push_back(cur);
    IPoint next = pts[0] == cur ? pts[1] : pts[0];
    for (const auto& r : pts) {
      if (r == cur) continue;
      const std::int64_t c = dot(cross(sub(next, cur), sub(r, cur)), n);
      if (c < 0 || (c == 0 && dot(sub(r, cur), sub(r, cur)) > dot(sub(next, cur), sub(next, cur)))) next = r;
    }
    cur = next;
    if (ring.size() > pts.size()) throw std::logic_error("oracle jarvis did not close");
  } while (cur != start);
  return ring;
}

IHull hull_1d(const std::vector<IPoint>& pts) {
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
  return {{{IPoint{1, 0, 0}, (*hi)[0]}, {IPoint{-1, 0, 0}, -(*lo)[0]}}, to_mpz((*hi)[0] - (*lo)[0])};
}

IHull hull_2d(const std::vector<IPoint>& pts) {
  const auto ring = jarvis(pts, IPoint{0, 0, 1});
  IHull h;
  h.volume = 0;
  for (size_t i = 0; i < ring.size(); ++i) {
    const IPoint& p = ring[i];
    const IPoint& q = ring[(i + 1) % ring.size()];
    h.volume += to_mpz(p[0] * q[1] - p[1] * q[0]);
    h.planes.push_back(canonical(IPoint{q[1] - p[1], p[0] - q[0], 0}, p));
  }
  return h;
}

IHull hull_3d(const std::vector<IPoint>& pts) {
  // First hull edge: a is the lexicographic minimum; the vertical supporting
  // plane through a from the xy-projection, then the in-plane wrap from a.
  const IPoint a = *std::min_element(pts.begin(), pts.end());
  IPoint b{};
  bool have_b = false;
  for (const auto& r : pts) {
    if (r[0] == a[0] && r[1] == a[1]) continue;
    if (!have_b) { b = r; have_b = true; continue; }
    const std::int64_t c = (b[0] - a[0]) * (r[1] - a[1]) - (b[1] - a[1]) * (r[0] - a[0]);
    if (c < 0) b = r;
  }
  if (!have_b) return {};
  IPoint n0{b[1] - a[1], a[0] - b[0], 0};
  for (const auto& r : pts)
    if (dot(n0, sub(r, a)) > 0) { n0 = {-n0[0], -n0[1], 0}; break; }
  std::vector<IPoint> contact;
  for (const auto& r : pts)
    if (dot(n0, sub(r, a)) == 0) contact.push_back(r);
  IPoint e{};
  {
    bool have_e = false;
    for (const auto& r : contact) {
      if (r == a) continue;
      if (!have_e) { e = r; have_e = true; continue; }
      const std::int64_t c = dot(cross(sub(e, a), sub(r, a)), n0);
      if (c < 0 || (c == 0 && dot(sub(r, a), sub(r, a)) > dot(sub(e, a), sub(e, a)))) e = r;
    }
  }

  // Wraps around the line p-q. All points off `skip` lie within half a turn
  // of the reference direction; the one farthest round spans the supporting
  // plane on the far side.
  auto pivot = [&](const IPoint& p, const IPoint& q, const IPoint& ref, const IPlane& skip) -> std::optional<IPlane> {
    const IPoint d = sub(q, p);
    auto sign = [](std::int64_t v) { return (v > 0) - (v < 0); };
    IPoint s{};
    int sigma = 0;
    bool have = false;
    for (const auto& u : pts) {
      if (dot(skip.n, u) == skip.off) continue;
      if (!have) {
        s = u;
        sigma = sign(dot(d, cross(ref, sub(u, p))));
        have = true;
        continue;
      }
      if (sign(dot(d, cross(sub(s, p), sub(u, p)))) == sigma) s = u;
    }
    if (!have) return std::nullopt;
    IPoint m = cross(d, sub(s, p));
    for (const auto& u : pts)
      if (dot(m, sub(u, p)) > 0) { m = {-m[0], -m[1], -m[2]}; break; }
    for (const auto& u : pts)
      if (dot(m, sub(u, p)) > 0) throw std::logic_error("oracle hull: pivot plane is not supporting");
    return canonical(m, p);
  };

  const IPlane vertical = canonical(n0, a);
  std::optional<IPlane> first;
  const IPoint d0 = sub(e, a);
  bool flat_contact = false;
  for (const auto& r : contact)
    if (cross(d0, sub(r, a)) != IPoint{0, 0, 0}) { flat_contact = true; break; }
  if (flat_contact) first = vertical;
  else first = pivot(a, e, cross(n0, d0), vertical);
  if (!first) return {};

  IHull h;
  h.volume = 0;
  std::set<IPlane> seen{*first};
  std::vector<IPlane> queue{*first};
  while (!queue.empty()) {
    const IPlane f = queue.back();
    queue.pop_back();
    h.planes.push_back(f);
    std::vector<IPoint> on;
    for (const auto& r : pts)
      if (dot(f.n, r) == f.off) on.push_back(r);
    const auto ring = jarvis(on, f.n);
    if (ring.size() < 3) throw std::logic_error("oracle hull: facet with fewer than 3 vertices");
    for (size_t i = 1; i + 1 < ring.size(); ++i) {
      const IPoint c = cross(ring[i], ring[i + 1]);
      h.volume += to_mpz(ring[0][0]) * to_mpz(c[0]) + to_mpz(ring[0][1]) * to_mpz(c[1]) +
                  to_mpz(ring[0][2]) * to_mpz(c[2]);
    }
    for (size_t i = 0; i < ring.size(); ++i) {
      const IPoint& p = ring[i];
      const IPoint& r = ring[(i + 2) % ring.size()];
      auto next = pivot(p, ring[(i + 1) % ring.size()], sub(r, p), f);
      if (next && !seen.count(*next)) {
        seen.insert(*next);
        queue.push_back(*next);
      }
    }
  }
  return h;
}

// Candidate corners of a cell set in cell units: per line along the last
// axis only the lowest and highest corner can be extreme.
std::vector<IPoint> corner_points(const CellSet& s, std::int64_t scale = 1) {
  const int d = s.dim();
  std::map<std::array<std::int64_t, 2>, std::pair<std::int64_t, std::int64_t>> lines;
  for (const auto& c : s.cells()) {
    for (unsigned mask = 0; mask < (1u << (d - 1)); ++mask) {
      std::array<std::int64_t, 2> key{};
      for (int i = 0; i + 1 < d; ++i) key[i] = (c[i] + (mask >> i & 1)) * scale;
      const std::int64_t lo = c[d - 1] * scale, hi = (c[d - 1] + 1) * scale;
      auto it = lines.find(key);
      if (it == lines.end()) lines.emplace(key, std::make_pair(lo, hi));
      else {
        it->second.first = std::min(it->second.first, lo);
        it->second.second = std::max(it->second.second, hi);
      }
    }
  }
  std::vector<IPoint> pts;
  for (const auto& [key, range] : lines) {
    IPoint p{};
    for (int i = 0; i + 1 < d; ++i) p[i] = key[i];
    p[d - 1] = range.first;
    pts.push_back(p);
    p[d - 1] = range.second;
    pts.push_back(p);
  }
  return pts;
}

IHull oracle_hull(const CellSet& s) {
  if (s.empty()) throw InvalidArgument("oracle hull: empty set");
  const auto pts = corner_points(s);
  switch (s.dim()) {
    case 1: return hull_1d(pts);
    case 2: return hull_2d(pts);
    case 3: return hull_3d(pts);
    default: throw InvalidArgument("oracle hull: dim must be 1..3");
  }
}

}  // namespace

Rational sweep_union_volume(const BoxList& boxes) {
  std::vector<const Box*> live;
  int dim = 0;
  for (const auto& b : boxes) {
    if (b.dim() < 1 || b.dim() > kMaxExactDim) throw InvalidArgument("sweep_union_volume: dim must be 1..3");
    if (dim == 0) dim = b.dim();
    if (b.dim() != dim) throw InvalidArgument("sweep_union_volume: mixed dimensions");
    if (!b.degenerate()) live.push_back(&b);
  }
  if (live.empty()) return 0;

  mpz_class lcm = 1;
  for (const Box* b : live)
    for (int i = 0; i < dim; ++i) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), b->lo[i].get_den_mpz_t());
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), b->hi[i].get_den_mpz_t());
    }
  const Rational scale(lcm);
  std::vector<IBox<mpz_class>> big;
  bool fits = true;
  const mpz_class limit = mpz_class(1) << 40;
  for (const Box* b : live) {
    IBox<mpz_class> ib;
    for (int i = 0; i < dim; ++i) {
      ib.lo[i] = Rational(b->lo[i] * scale).get_num();
      ib.hi[i] = Rational(b->hi[i] * scale).get_num();
      if (abs(ib.lo[i]) > limit || abs(ib.hi[i]) > limit) fits = false;
    }
    big.push_back(std::move(ib));
  }
  mpz_class raw;
  if (fits) {
    std::vector<IBox<std::int64_t>> small;
    for (const auto& ib : big) {
      IBox<std::int64_t> s;
      for (int i = 0; i < dim; ++i) {
        s.lo[i] = ib.lo[i].get_si();
        s.hi[i] = ib.hi[i].get_si();
      }
      small.push_back(s);
    }
    raw = sweep_all(std::move(small), dim);
  } else {
    raw = sweep_all(std::move(big), dim);
  }
  Rational denom = 1;
  for (int i = 0; i < dim; ++i) denom *= scale;
  return Rational(raw) / denom;
}

BoxList minkowski_direct_boxes(const CellSet& a, const CellSet& b, const Weight& t, size_t pair_cap) {
  if (a.grid() != b.grid()) throw InvalidArgument("minkowski_direct_boxes: grid mismatch");
  if (a.size() * b.size() > pair_cap)
    throw InvalidArgument("minkowski_direct_boxes: " + std::to_string(a.size() * b.size()) +
                          " pairs exceed the cap of " + std::to_string(pair_cap));
  const int d = a.dim();
  const Rational& h = a.pitch();
  const Rational s = t.value(), r = t.complement();
  BoxList out;
  out.reserve(a.size() * b.size());
  for (const auto& ca : a.cells())
    for (const auto& cb : b.cells()) {
      Box box{Point(d), Point(d)};
      for (int i = 0; i < d; ++i) {
        box.lo[i] = h * (s * Rational(static_cast<long>(ca[i])) + r * Rational(static_cast<long>(cb[i])));
        box.hi[i] = box.lo[i] + h;
      }
      out.push_back(std::move(box));
    }
  return out;
}

Rational hull_volume(const CellSet& s) {
  const IHull h = oracle_hull(s);
  Rational v(h.volume);
  v /= (s.dim() == 3 ? 6 : s.dim() == 2 ? 2 : 1);
  return v * s.grid().cell_volume();
}

Bracket region_bracket(const CellSet& a, const CellSet& p, int subdivisions) {
  if (a.grid() != p.grid()) throw InvalidArgument("region_bracket: grid mismatch");
  if (subdivisions < 1) throw InvalidArgument("region_bracket: subdivisions must be >= 1");
  const int d = a.dim();
  const std::int64_t k = subdivisions;
  const IHull hull = oracle_hull(p);
  std::vector<IPlane> planes;
  for (const auto& pl : hull.planes) planes.push_back({pl.n, pl.off * k});

  size_t inside = 0, touching = 0;
  std::int64_t sub_count = 1;
  for (int i = 0; i < d; ++i) sub_count *= k;
  for (const auto& c : a.cells()) {
    for (std::int64_t j = 0; j < sub_count; ++j) {
      IPoint lo{};
      std::int64_t rem = j;
      for (int i = 0; i < d; ++i) {
        lo[i] = c[i] * k + rem % k;
        rem /= k;
      }
      bool all_in = true, maybe = true;
      for (const auto& pl : planes) {
        bool any_in = false, any_out = false;
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
          IPoint q = lo;
          for (int i = 0; i < d; ++i) q[i] += mask >> i & 1;
          (dot(pl.n, q) <= pl.off ? any_in : any_out) = true;
        }
        if (any_out) all_in = false;
        if (!any_in) { maybe = false; break; }
      }
      if (maybe && all_in) ++inside;
      if (maybe) ++touching;
    }
  }
  const Rational sub_vol = a.grid().cell_volume() / Rational(static_cast<long>(sub_count));
  return {Rational(static_cast<long>(inside)) * sub_vol, Rational(static_cast<long>(touching)) * sub_vol};
}

KernelValues kernel_values(const CellSet& a, const CellSet& b, const Weight& t) {
  return {minkowski_volume(a, b, t), polytope_volume(convex_hull(a)), polytope_volume(convex_hull(b)),
          region_measure(a, convex_hull(b))};
}

bool CrosscheckReport::pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CrosscheckRow& r) { return r.equal; });
}

CrosscheckReport crosscheck_instance(const CellSet& a, const CellSet& b, const Weight& t, const std::string& instance_id,
                                     size_t pair_cap) {
  return crosscheck_instance(a, b, t, kernel_values(a, b, t), instance_id, pair_cap);
}

CrosscheckReport crosscheck_instance(const CellSet& a, const CellSet& b, const Weight& t, const KernelValues& kernel,
                                     const std::string& instance_id, size_t pair_cap) {
  CrosscheckReport rep;
  auto exact = [&](const char* what, const Rational& k, const Rational& o) {
    rep.rows.push_back({instance_id, what, to_string(k), to_string(o), k == o});
  };
  exact("minkowski_volume", kernel.minkowski_volume, sweep_union_volume(minkowski_direct_boxes(a, b, t, pair_cap)));
  exact("hull_volume_a", kernel.hull_a, hull_volume(a));
  exact("hull_volume_b", kernel.hull_b, hull_volume(b));
  const Bracket br = region_bracket(a, b);
  rep.rows.push_back({instance_id, "region_measure", to_string(kernel.region),
                      "[" + to_string(br.lower) + " " + to_string(br.upper) + "]",
                      br.lower <= kernel.region && kernel.region <= br.upper});
  return rep;
}

std::string crosscheck_csv_header() { return "instance_id,quantity,kernel_value,oracle_value,equal"; }

std::string crosscheck_csv_rows(const CrosscheckReport& report) {
  std::ostringstream os;
  for (const auto& r : report.rows)
    os << r.instance_id << ',' << r.quantity << ',' << r.kernel_value << ',' << r.oracle_value << ','
       << (r.equal ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace bmlab::oracle
