#include "bmlab/deficits.hpp"

#include <algorithm>
#include <sstream>

#include "bmlab/measure.hpp"
#include "bmlab/minkowski.hpp"
#include "raster.hpp"

namespace bmlab {

Rational delta_t(const CellSet& a, const CellSet& b, const Weight& t) {
  require_same_grid(a, b, "delta_t");
  if (a.size() != b.size()) throw InvalidArgument("delta_t: volumes differ");
  if (a.empty()) throw InvalidArgument("delta_t: empty sets");
  return minkowski_volume(a, b, t) / volume(a) - 1;
}

Rational hull_gap(const CellSet& a) {
  if (a.empty()) throw InvalidArgument("hull_gap: empty set");
  return polytope_volume(convex_hull(a)) - volume(a);
}

HullRatio common_hull_ratio(const CellSet& x, const CellSet& y) {
  require_same_grid(x, y, "common_hull_ratio");
  const size_t common = intersection_count(x, y);
  if (common == 0) throw InvalidArgument("common_hull_ratio: sets do not overlap");
  const Rational cv = x.grid().cell_volume();
  const Rational vmin = Rational(static_cast<long>(std::min(x.size(), y.size()))) * cv;
  HullRatio out;
  out.lhs = polytope_volume(convex_hull(x, y)) / vmin - 1;
  out.rhs = fraction(static_cast<long>(x.size() + y.size() - 2 * common), static_cast<long>(common));
  return out;
}

namespace {

// Overlap counts N(z) = #{b : b + z ∈ A} on the box of shifts where B + z can meet A.
class OverlapTable {
 public:
  OverlapTable(const CellSet& a, const CellSet& b) : d_(a.dim()) {
    const auto ra = detail::Raster::from_cells(a);
    const auto rb = detail::Raster::from_cells(b);
    const Cell al = a.lower(), au = a.upper(), bl = b.lower(), bu = b.upper();
    size_t total = 1;
    for (int i = 0; i < d_; ++i) {
      lo_[i] = al[i] - bu[i];
      ext_[i] = (au[i] - bl[i]) - lo_[i] + 1;
      total *= static_cast<size_t>(ext_[i]);
    }
    counts_.resize(total);
    Cell z{};
    for (size_t k = 0; k < total; ++k) {
      size_t rem = k;
      for (int i = d_ - 1; i >= 0; --i) {
        z[i] = lo_[i] + static_cast<std::int64_t>(rem % ext_[i]);
        rem /= ext_[i];
      }
      counts_[k] = static_cast<std::int64_t>(detail::overlap_count(ra, rb, z));
    }
  }

  const Cell& lo() const { return lo_; }
  const Cell& extent() const { return ext_; }

  std::int64_t at(const Cell& z) const {
    size_t k = 0;
    for (int i = 0; i < d_; ++i) {
      const std::int64_t r = z[i] - lo_[i];
      if (r < 0 || r >= ext_[i]) return 0;
      k = k * ext_[i] + static_cast<size_t>(r);
    }
    return counts_[k];
  }

  // Overlap in cell units at a rational shift u (in cell units).
  Rational at(const std::vector<Rational>& u) const {
    Cell k{};
    std::vector<Rational> f(d_);
    for (int i = 0; i < d_; ++i) {
      const mpz_class fl = floor(u[i]);
      k[i] = fl.get_si();
      f[i] = u[i] - Rational(fl);
    }
    Rational total = 0;
    for (unsigned mask = 0; mask < (1u << d_); ++mask) {
      Rational w = 1;
      Cell z = k;
      for (int i = 0; i < d_ && w != 0; ++i) {
        if (mask >> i & 1) { w *= f[i]; ++z[i]; }
        else w *= Rational(1) - f[i];
      }
      if (w != 0) total += w * Rational(static_cast<long>(at(z)));
    }
    return total;
  }

 private:
  int d_;
  Cell lo_{};
  Cell ext_{};
  std::vector<std::int64_t> counts_;
};

struct Candidate {
  std::vector<Rational> u;
  Rational overlap;
  Rational norm;
};

bool better(const Candidate& x, const Candidate& y) {
  if (x.overlap != y.overlap) return x.overlap > y.overlap;
  if (x.norm != y.norm) return x.norm < y.norm;
  return x.u < y.u;
}

Candidate make_candidate(const OverlapTable& table, std::vector<Rational> u) {
  Candidate c;
  c.overlap = table.at(u);
  c.norm = norm_sq(u);
  c.u = std::move(u);
  return c;
}

}  // namespace

TranslationResult optimal_translation_symdiff(const CellSet& a, const CellSet& b, const ScanSpec& scan) {
  require_same_grid(a, b, "optimal_translation_symdiff");
  if (scan.subdivisions < 1) throw InvalidArgument("scan subdivisions must be >= 1");
  const int d = a.dim();
  const Rational cv = a.grid().cell_volume();
  TranslationResult out;
  if (a.empty() || b.empty()) {
    out.shift = zero_point(d);
    out.overlap = 0;
    out.symdiff = volume(a) + volume(b);
    return out;
  }

  const OverlapTable table(a, b);
  const std::int64_t m = scan.subdivisions;
  Candidate best;
  bool have = false;

  // Integer part ranges over the table box; with m > 1 one step lower as well
  // so that fractional shifts below the first lattice shift are covered.
  Cell lo = table.lo(), ext = table.extent();
  if (m > 1)
    for (int i = 0; i < d; ++i) { --lo[i]; ++ext[i]; }
  size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<size_t>(ext[i] * m);
  for (size_t k = 0; k < total; ++k) {
    size_t rem = k;
    Cell z{}, j{};
    for (int i = d - 1; i >= 0; --i) {
      const auto step = static_cast<std::int64_t>(rem % static_cast<size_t>(ext[i] * m));
      rem /= static_cast<size_t>(ext[i] * m);
      z[i] = lo[i] + step / m;
      j[i] = step % m;
    }
    if (m == 1) {
      const std::int64_t n = table.at(z);
      if (have && Rational(static_cast<long>(n)) < best.overlap) continue;
    }
    std::vector<Rational> u(d);
    for (int i = 0; i < d; ++i) u[i] = Rational(static_cast<long>(z[i])) + fraction(static_cast<long>(j[i]), m);
    Candidate c = make_candidate(table, std::move(u));
    if (!have || better(c, best)) { best = std::move(c); have = true; }
  }

  // Per-coordinate ternary refinement inside one scan step of the optimum.
  const Rational step(1, m);
  for (int i = 0; i < d; ++i) {
    Rational lo_i = best.u[i] - step, hi_i = best.u[i] + step;
    auto eval = [&](const Rational& x) {
      auto u = best.u;
      u[i] = x;
      return table.at(u);
    };
    for (int r = 0; r < scan.refine_rounds; ++r) {
      const Rational m1 = lo_i + (hi_i - lo_i) / 3, m2 = hi_i - (hi_i - lo_i) / 3;
      if (eval(m1) < eval(m2)) lo_i = m1;
      else hi_i = m2;
    }
    auto u = best.u;
    u[i] = (lo_i + hi_i) / 2;
    Candidate c = make_candidate(table, std::move(u));
    if (c.overlap > best.overlap) best = std::move(c);
  }

  out.shift = a.pitch() * Point(best.u);
  out.overlap = best.overlap * cv;
  out.symdiff = volume(a) + volume(b) - 2 * out.overlap;
  return out;
}

FreimanReport freiman_check_1d(const CellSet& a, const CellSet& b, const Weight& t) {
  if (a.dim() != 1) throw InvalidArgument("freiman_check_1d: dim must be 1");
  FreimanReport r;
  r.delta = delta_t(a, b, t);
  r.gap_a = hull_gap(a);
  r.gap_b = hull_gap(b);
  r.bound_a = r.delta * volume(a) / t.value();
  r.bound_b = r.delta * volume(b) / t.complement();
  r.applicable = r.delta < t.value() && r.delta < t.complement();
  r.holds_a = r.gap_a <= r.bound_a;
  r.holds_b = r.gap_b <= r.bound_b;
  return r;
}

BoxHullReport box_hull_bound_check(const Box& r, const Box& t) {
  const int n = r.dim();
  if (t.dim() != n || static_cast<int>(r.hi.size()) != n || static_cast<int>(t.hi.size()) != n)
    throw InvalidArgument("box_hull_bound_check: dimension mismatch");
  if (r.degenerate() || t.degenerate()) throw InvalidArgument("box_hull_bound_check: degenerate box");
  Box inter{r.lo, r.hi};
  for (int i = 0; i < n; ++i) {
    inter.lo[i] = std::max(r.lo[i], t.lo[i]);
    inter.hi[i] = std::min(r.hi[i], t.hi[i]);
  }
  if (inter.degenerate()) throw InvalidArgument("box_hull_bound_check: boxes do not overlap");

  std::vector<Point> corners;
  for (const Box* box : {&r, &t}) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Point p(n);
      for (int i = 0; i < n; ++i) p[i] = (mask >> i & 1) ? box->hi[i] : box->lo[i];
      corners.push_back(std::move(p));
    }
  }
  BoxHullReport out;
  out.lhs = polytope_volume(Polytope::hull(n, std::move(corners)));
  out.rhs = pow(Rational(2), n) * r.volume() * t.volume() / inter.volume();
  out.holds = out.lhs <= out.rhs;
  return out;
}

std::vector<Point> centered_simplex(int dim) {
  std::vector<Point> v(dim + 1, zero_point(dim));
  for (int i = 0; i < dim; ++i) v[i + 1][i] = 1;
  const Rational c(1, dim + 1);
  for (auto& p : v)
    for (auto& x : p) x -= c;
  return v;
}

LambdaReport lambda_boundedness(const CellSet& x, const CellSet& y, const Point& center, int bisection_steps) {
  const int d = x.dim();
  if (y.dim() != d || static_cast<int>(center.size()) != d) throw InvalidArgument("lambda_boundedness: dimension mismatch");
  if (x.empty() || y.empty()) throw InvalidArgument("lambda_boundedness: empty set");
  if (!x.contains_point(center) || !y.contains_point(center))
    throw InvalidArgument("lambda_boundedness: center not in both sets");

  const auto s_vertices = centered_simplex(d);
  const Polytope s = Polytope::hull(d, s_vertices);

  // Gauge of p with respect to S; facets n.x <= b have b > 0.
  auto gauge = [&](const Point& p) {
    Rational g = 0;
    for (const auto& f : s.facets()) g = std::max(g, Rational(dot(f.normal, p) / f.offset));
    return g;
  };
  LambdaReport out;
  out.r_outer = 0;
  for (const CellSet* set : {&x, &y}) {
    const Polytope hull = convex_hull(*set);
    for (const auto& v : hull.vertices()) out.r_outer = std::max(out.r_outer, gauge(v - center));
  }

  auto scaled = [&](const Rational& r) {
    std::vector<Point> pts;
    for (const auto& v : s_vertices) pts.push_back(r * v + center);
    return Polytope::hull(d, std::move(pts));
  };
  auto inside_both = [&](const Rational& r) {
    const Polytope p = scaled(r);
    const Rational vol = polytope_volume(p);
    return region_measure(x, p) == vol && region_measure(y, p) == vol;
  };
  Rational lo = 0, hi = out.r_outer;
  for (int k = 0; k < bisection_steps; ++k) {
    const Rational mid = (lo + hi) / 2;
    if (inside_both(mid)) lo = mid;
    else hi = mid;
  }
  out.r_inner = lo;
  if (out.r_inner == 0) throw InvalidArgument("lambda_boundedness: no inner simplex found");
  out.lambda = out.r_outer / out.r_inner;
  return out;
}

DeficitReport deficit_report(const CellSet& a, const CellSet& b, const Weight& t, std::string scenario_id,
                             const ScanSpec& scan) {
  require_same_grid(a, b, "deficit_report");
  if (a.empty() || b.empty()) throw InvalidArgument("deficit_report: empty set");
  DeficitReport r;
  r.scenario_id = std::move(scenario_id);
  r.dim = a.dim();
  r.t = t.value();
  r.pitch = a.pitch();
  r.vol_a = volume(a);
  r.vol_b = volume(b);
  r.hull_gap_a = hull_gap(a);
  r.hull_gap_b = hull_gap(b);
  if (a.size() == b.size()) {
    r.delta_t = delta_t(a, b, t);
    const auto best = optimal_translation_symdiff(a, b, scan);
    r.symdiff_opt = best.symdiff;
    r.shift = best.shift;
    std::vector<Point> pts = convex_hull(a).vertices();
    const Polytope hb = convex_hull(b);
    for (const auto& v : hb.vertices()) pts.push_back(v + best.shift);
    r.hull_ratio = polytope_volume(Polytope::hull(a.dim(), std::move(pts))) / std::min(r.vol_a, r.vol_b);
  }
  return r;
}

std::string deficit_csv_header() {
  return "scenario_id,dim,t_num,t_den,pitch_num,pitch_den,vol_a,vol_b,delta_t,hull_gap_a,hull_gap_b,"
         "hull_ratio,symdiff_opt,shift_1,shift_2,shift_3,runtime_ms";
}

std::string deficit_csv_row(const DeficitReport& r) {
  std::ostringstream os;
  auto opt = [](const std::optional<Rational>& v) { return v ? to_string(*v) : std::string(); };
  os << r.scenario_id << ',' << r.dim << ',' << r.t.get_num() << ',' << r.t.get_den() << ','
     << r.pitch.get_num() << ',' << r.pitch.get_den() << ',' << to_string(r.vol_a) << ',' << to_string(r.vol_b)
     << ',' << opt(r.delta_t) << ',' << opt(r.hull_gap_a) << ',' << opt(r.hull_gap_b) << ','
     << opt(r.hull_ratio) << ',' << opt(r.symdiff_opt);
  for (int i = 0; i < kMaxExactDim; ++i) {
    os << ',';
    if (i < static_cast<int>(r.shift.size())) os << to_string(r.shift[i]);
  }
  os << ',' << r.runtime_ms;
  return os.str();
}

}  // namespace bmlab
