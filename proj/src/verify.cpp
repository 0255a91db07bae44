#include "bmlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "bmlab/deficits.hpp"
#include "bmlab/generators.hpp"
#include "bmlab/minkowski.hpp"
#include "bmlab/oracle.hpp"
#include "bmlab/partition.hpp"
#include "bmlab/scenario.hpp"

namespace bmlab {

namespace {

// Pinned acceptance tolerances.
constexpr double kSharpSlope = 0.5, kSharpSlopeTol = 0.02;
constexpr double kHullSlope = 1.0, kSymdiffSlope = 0.5, kTrendSlopeTol = 0.15;
constexpr double kTrendDeltaLo = 1e-4, kTrendDeltaHi = 1e-2;
constexpr double kMaxTauRatio = 0.02;
const Rational kBalanceTol(1, 1000000);

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string ratio(size_t ok, size_t n) { return std::to_string(ok) + "/" + std::to_string(n); }

Rational weight_at(size_t i) {
  static const long dens[] = {2, 3, 4};
  return Rational(1, dens[i % 3]);
}

std::array<double, 3> centroid(const CellSet& s) {
  std::array<double, 3> c{};
  for (const auto& cell : s.cells())
    for (int i = 0; i < s.dim(); ++i) c[i] += static_cast<double>(cell[i]) + 0.5;
  const double h = to_double(s.pitch());
  for (int i = 0; i < s.dim(); ++i) c[i] *= h / static_cast<double>(s.size());
  return c;
}

Point dyadic(const std::array<double, 3>& x, int dim, int bits = 6) {
  Point p(dim);
  for (int i = 0; i < dim; ++i) p[i] = round_dyadic(x[i], bits);
  return p;
}

CellSet trimmed(const CellSet& s, size_t n) { return gen::trim_to(s, n, centroid(s)); }

/// Equal-count pair of ellipses; b's center is offset by up to `offset`.
std::pair<CellSet, CellSet> ellipse_pair(std::mt19937_64& rng, const GridSpec& grid, double rlo, double rhi,
                                         double offset) {
  std::uniform_real_distribution<double> rad(rlo, rhi), off(-offset, offset), ang(0.0, 3.14159);
  const CellSet a = gen::ellipse_cells(grid, {0, 0, 0}, {rad(rng), rad(rng), rad(rng)}, ang(rng));
  const CellSet b = gen::ellipse_cells(grid, {off(rng), off(rng), off(rng)}, {rad(rng), rad(rng), rad(rng)}, ang(rng));
  const size_t n = std::min(a.size(), b.size());
  return {trimmed(a, n), trimmed(b, n)};
}

/// Simplex around the apex: the centered simplex with vertices jittered by up to 1/16.
ConeFrame random_frame(std::mt19937_64& rng, const Point& apex) {
  const int d = static_cast<int>(apex.size());
  std::vector<Point> v = centered_simplex(d);
  for (auto& p : v) {
    for (auto& x : p) x += fraction(static_cast<long>(gen::uniform(rng, -4, 4)), 64);
    p = p + apex;
  }
  Simplex s(v);
  if (!s.strictly_contains(apex)) {
    v = centered_simplex(d);
    for (auto& p : v) p = p + apex;
    s = Simplex(v);
  }
  return ConeFrame(apex, s);
}

/// Cone lookup for lattice points with a double filter and exact fallback.
class FastCones {
 public:
  explicit FastCones(const ConeFrame& frame) : frame_(frame) {
    for (size_t i = 0; i < frame.cone_count(); ++i) {
      std::vector<std::array<double, 4>> hs;
      for (const auto& h : frame.cone(i)) {
        std::array<double, 4> row{};
        for (int k = 0; k < h.dim(); ++k) row[k] = to_double(h.normal[k]);
        row[3] = to_double(h.offset);
        hs.push_back(row);
      }
      cones_.push_back(std::move(hs));
    }
  }

  /// `exact` builds the rational point when the filter cannot decide.
  template <class Exact>
  size_t locate(const std::array<double, 3>& xd, Exact exact) const {
    for (size_t i = 0; i < cones_.size(); ++i) {
      bool in = true;
      for (const auto& row : cones_[i]) {
        const double e = row[0] * xd[0] + row[1] * xd[1] + row[2] * xd[2] - row[3];
        const double scale = 1e-9 * (1 + std::fabs(row[3]) + std::fabs(xd[0]) + std::fabs(xd[1]) + std::fabs(xd[2]));
        if (std::fabs(e) <= scale) return frame_.locate(exact());
        if (e > 0) {
          in = false;
          break;
        }
      }
      if (in) return i;
    }
    return frame_.locate(exact());
  }

 private:
  const ConeFrame& frame_;
  std::vector<std::vector<std::array<double, 4>>> cones_;
};

struct Instance {
  std::string id;
  CellSet a;
  CellSet b;
  Rational t;
};

std::vector<Instance> oracle_corpus(std::uint64_t seed, int n) {
  std::vector<Instance> out;
  for (int i = 0; i < n; ++i) {
    auto rng = gen::instance_rng(seed, static_cast<std::uint64_t>(i));
    const int dim = 1 + i % 3;
    const Rational pitch(1, static_cast<long>(gen::uniform(rng, 1, 3)));
    auto [a, b] = gen::random_equal_pair(rng, dim, 200, pitch);
    out.push_back({"oracle-" + std::to_string(i), std::move(a), std::move(b), weight_at(static_cast<size_t>(i / 3))});
  }
  return out;
}

ScenarioResult sharp_run() {
  ScenarioSpec spec;
  spec.name = "sharp-family";
  return run_scenario(spec);
}

std::vector<ScenarioResult> freiman_runs(std::uint64_t seed, int n) {
  std::vector<ScenarioResult> out;
  for (int k = 0; k < 3; ++k) {
    ScenarioSpec spec;
    spec.name = "freiman1d";
    spec.dim = 1;
    spec.t = weight_at(static_cast<size_t>(k));
    spec.trials = n / 3 + (k < n % 3 ? 1 : 0);
    spec.seed = seed + static_cast<std::uint64_t>(k);
    out.push_back(run_scenario(spec));
  }
  return out;
}

ScenarioResult trend_run(std::uint64_t seed, int n) {
  ScenarioSpec spec;
  spec.name = "perturbed-convex";
  spec.trials = n;
  spec.seed = seed;
  return run_scenario(spec);
}

struct BalanceInstance {
  CellSet a;
  CellSet b;
  ConeFrame frame;
};

BalanceInstance balance_instance(std::uint64_t seed, int i) {
  auto rng = gen::instance_rng(seed ^ 0x6ba1, static_cast<std::uint64_t>(i));
  auto [a, b] = ellipse_pair(rng, GridSpec(2, Rational(1, 16)), 0.6, 1.4, 0.5);
  const Point apex = dyadic(centroid(a), 2);
  ConeFrame frame = random_frame(rng, apex);
  return {std::move(a), std::move(b), std::move(frame)};
}

struct SplitInstance {
  std::string id;
  CellSet a;
  CellSet b;
  Rational t;
  std::vector<std::pair<CellSet, CellSet>> pieces;
  Rational tau = 0;
};

/// Pieces split by lattice hyperplanes x_1 = c (for A) and x_1 = c' (for B) with matching counts.
SplitInstance exact_split(std::uint64_t seed, int i) {
  auto rng = gen::instance_rng(seed ^ 0x5b1, static_cast<std::uint64_t>(i));
  const int dim = 1 + i % 2;
  const GridSpec grid(dim, Rational(1, 4));
  auto side = [&](size_t n, bool left, std::int64_t cut) {
    const CellSet blob = gen::random_blob(rng, grid, n);
    Cell z{};
    z[0] = left ? cut - 1 - blob.upper()[0] - gen::uniform(rng, 0, 2) : cut - blob.lower()[0] + gen::uniform(rng, 0, 2);
    for (int k = 1; k < dim; ++k) z[k] = gen::uniform(rng, -3, 3);
    return blob.translated(z);
  };
  const auto nl = static_cast<size_t>(gen::uniform(rng, 1, 25)), nr = static_cast<size_t>(gen::uniform(rng, 1, 25));
  const std::int64_t cb = gen::uniform(rng, -4, 4);
  CellSet al = side(nl, true, 0), ar = side(nr, false, 0), bl = side(nl, true, cb), br = side(nr, false, cb);
  SplitInstance s{"split-" + std::to_string(i), set_union(al, ar), set_union(bl, br), weight_at(static_cast<size_t>(i)),
                  {}, 0};
  s.pieces = {{std::move(al), std::move(bl)}, {std::move(ar), std::move(br)}};
  return s;
}

/// Cone pieces of a 2D pair at pitch 1/64, B balanced against A by a KKM translate.
SplitInstance general_split(std::uint64_t seed, int i) {
  auto rng = gen::instance_rng(seed ^ 0x6e7, static_cast<std::uint64_t>(i));
  const GridSpec grid(2, Rational(1, 64));
  auto [a, b] = ellipse_pair(rng, grid, 2.5, 3.25, 0.5);
  const Point apex = dyadic(centroid(a), 2);
  const ConeFrame frame = random_frame(rng, apex);
  Point v;
  try {
    KkmOptions opt;
    opt.max_iterations = 50;
    opt.start_radius = 0;
    v = kkm_cone_translate(a, b, frame, Rational(1, 100), opt).witness;
  } catch (const ConvergenceError&) {
    const auto ca = centroid(a), cb = centroid(b);
    v = dyadic({ca[0] - cb[0], ca[1] - cb[1], 0}, 2);
  }
  // B ∩ (C_i - v) pairs with A ∩ C_i.
  const ConeFrame moved = frame.translated(Rational(-1) * v);
  SplitInstance s{"cones-" + std::to_string(i), a, b, weight_at(static_cast<size_t>(i)), {}, 0};
  size_t cut = 0;
  auto assign = [&](const CellSet& set, const ConeFrame& f) {
    const FastCones cones(f);
    std::vector<std::vector<Cell>> parts(f.cone_count());
    const double h = to_double(set.pitch());
    for (const auto& c : set.cells()) {
      const std::array<double, 3> mid{(static_cast<double>(c[0]) + 0.5) * h, (static_cast<double>(c[1]) + 0.5) * h, 0};
      parts[cones.locate(mid, [&] { return set.center(c); })].push_back(c);
      size_t first = 0;
      bool straddles = false;
      for (int m = 0; m < 4; ++m) {
        const int dx = m & 1, dy = (m >> 1) & 1;
        const std::array<double, 3> xd{static_cast<double>(c[0] + dx) * h, static_cast<double>(c[1] + dy) * h, 0};
        const size_t k = cones.locate(xd, [&] { return set.corner(Cell{c[0] + dx, c[1] + dy, 0}); });
        if (m == 0) first = k;
        else if (k != first) straddles = true;
      }
      if (straddles) ++cut;
    }
    std::vector<CellSet> out;
    for (auto& p : parts) out.emplace_back(set.grid(), std::move(p));
    return out;
  };
  const auto pa = assign(a, frame), pb = assign(b, moved);
  for (size_t k = 0; k < pa.size(); ++k) s.pieces.emplace_back(pa[k], pb[k]);
  s.tau = Rational(static_cast<long>(cut)) * grid.cell_volume();
  return s;
}

Rational combined_volume(const CellSet& a, const CellSet& b, const Weight& t) {
  if (a.empty() || b.empty()) return 0;
  return minkowski_volume(a, b, t);
}

/// Steiner fixtures: a fixed pair rasterized at pitch 1/(8 * scale).
std::pair<CellSet, CellSet> steiner_fixture(int k, std::int64_t scale) {
  const GridSpec grid(2, Rational(1, 8 * scale));
  const double ra = 0.9 + 0.1 * k, rb = 1.4 - 0.05 * k;
  const CellSet a = gen::ellipse_cells(grid, {0.1 * k, 0.3, 0}, {ra, 0.5 + 0.04 * k, 0}, 0.3 * k);
  const CellSet b = gen::ellipse_cells(grid, {-0.2, 0.05 * k, 0}, {rb, 0.6, 0}, 1.1 + 0.2 * k);
  const size_t n = std::min(a.size(), b.size());
  return {trimmed(a, n), trimmed(b, n)};
}

std::map<std::int64_t, size_t> slice_counts(const CellSet& s, int axis) {
  std::map<std::int64_t, size_t> m;
  for (const auto& c : s.cells()) ++m[c[axis]];
  return m;
}

// ---- criteria ----

CriterionResult oracle_equivalence(const VerifyOptions& o) {
  const int n = o.trials.value_or(200);
  size_t agree = 0, mink = 0, quantities = 0;
  std::string first_bad;
  for (const auto& rep : crosscheck_run(n, o.seed)) {
    quantities += rep.rows.size();
    for (const auto& row : rep.rows)
      if (row.quantity == "minkowski_volume" && row.equal) ++mink;
    if (rep.pass()) ++agree;
    else if (first_bad.empty() && !rep.rows.empty()) first_bad = rep.rows.front().instance_id;
  }
  const auto un = static_cast<size_t>(n);
  CriterionResult r{1, "oracle", n > 0 && agree == un && mink == un, "", 0};
  r.detail = ratio(mink, un) + " minkowski volumes equal, " + ratio(agree, un) + " instances agree on all " +
             std::to_string(quantities) + " quantities";
  if (!first_bad.empty()) r.detail += ", first mismatch " + first_bad;
  return r;
}

CriterionResult bm_nonnegativity(const VerifyOptions& o) {
  size_t count = 0, bad = 0;
  std::optional<Rational> min_delta;
  auto note = [&](const Rational& d) {
    ++count;
    if (d < 0) ++bad;
    if (!min_delta || d < *min_delta) min_delta = d;
  };
  auto pair = [&](const CellSet& a, const CellSet& b, const Weight& t) {
    if (!a.empty() && a.size() == b.size()) note(delta_t(a, b, t));
  };
  auto rows = [&](const ScenarioResult& res) {
    for (const auto& row : res.rows)
      if (row.report.delta_t) note(*row.report.delta_t);
  };
  for (const auto& in : oracle_corpus(o.seed, o.trials.value_or(200))) pair(in.a, in.b, Weight(in.t));
  rows(sharp_run());
  for (const auto& res : freiman_runs(o.seed, o.trials.value_or(500))) rows(res);
  for (int i = 0; i < o.trials.value_or(50); ++i) {
    const auto in = balance_instance(o.seed, i);
    pair(in.a, in.b, Weight(Rational(1, 2)));
  }
  for (int i = 0; i < o.trials.value_or(100); ++i) {
    const auto s = exact_split(o.seed, i);
    pair(s.a, s.b, Weight(s.t));
    for (const auto& [pa, pb] : s.pieces) pair(pa, pb, Weight(s.t));
  }
  for (int i = 0; i < o.trials.value_or(50); ++i) {
    const auto s = general_split(o.seed, i);
    pair(s.a, s.b, Weight(s.t));
  }
  for (int k = 0; k < 10; ++k)
    for (std::int64_t scale : {1, 2}) {
      const auto [a, b] = steiner_fixture(k, scale);
      pair(a, b, Weight(Rational(1, 2)));
      pair(steiner_symmetrize(a, 0), steiner_symmetrize(b, 0), Weight(Rational(1, 2)));
    }
  rows(trend_run(o.seed, o.trials.value_or(40)));
  CriterionResult r{2, "bm", count > 0 && bad == 0, "", 0};
  r.detail = ratio(count - bad, count) + " instances with delta_t >= 0";
  if (min_delta) r.detail += ", min delta_t " + to_string(*min_delta);
  return r;
}

CriterionResult sharp_law(const VerifyOptions&) {
  const ScenarioResult res = sharp_run();
  size_t closed = 0;
  std::vector<std::pair<double, double>> xy;
  for (const auto& row : res.rows) {
    if (row.extra.at(1) == "1") ++closed;
    const auto& rep = row.report;
    xy.emplace_back(std::log(to_double(*rep.delta_t)), std::log(to_double(*rep.symdiff_opt / rep.vol_a)));
  }
  const double slope = fit_slope(xy);
  const bool slope_ok = std::fabs(slope - kSharpSlope) <= kSharpSlopeTol;
  CriterionResult r{3, "sharp", closed == res.rows.size() && slope_ok, "", 0};
  r.detail = "closed form exact on " + ratio(closed, res.rows.size()) + ", slope of log(symdiff/|A|) vs log delta " +
             fixed(slope) + " (target " + fixed(kSharpSlope, 3) + " +- " + fixed(kSharpSlopeTol, 3) + ")";
  return r;
}

CriterionResult freiman(const VerifyOptions& o) {
  size_t n = 0, holds = 0, applicable = 0;
  for (const auto& res : freiman_runs(o.seed, o.trials.value_or(500)))
    for (const auto& row : res.rows) {
      ++n;
      if (row.extra.at(0) == "1") ++applicable;
      if (row.extra.at(1) == "1") ++holds;
    }
  CriterionResult r{4, "freiman", n > 0 && holds == n && applicable == n, "", 0};
  r.detail = "both hull bounds hold on " + ratio(holds, n) + " pairs with delta_t < min(t, 1-t), t in {1/2, 1/3, 1/4}";
  return r;
}

CriterionResult box_hull(const VerifyOptions& o) {
  const int n = o.trials.value_or(500);
  size_t holds = 0;
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    auto rng = gen::instance_rng(o.seed ^ 0xb0c, static_cast<std::uint64_t>(i));
    const auto [rb, tb] = gen::random_box_pair(rng, 1 + i % 3, 8);
    const BoxHullReport rep = box_hull_bound_check(rb, tb);
    if (rep.holds) ++holds;
    worst = std::max(worst, to_double(rep.lhs / rep.rhs));
  }
  CriterionResult r{5, "box-hull", n > 0 && holds == static_cast<size_t>(n), "", 0};
  r.detail = "bound holds on " + ratio(holds, static_cast<size_t>(n)) + " box pairs, max lhs/rhs " + fixed(worst);
  return r;
}

CriterionResult balancing(const VerifyOptions& o) {
  const int n = o.trials.value_or(50);
  size_t kkm_ok = 0, hyper_ok = 0;
  int kkm_iters = 0, hyper_iters = 0;
  for (int i = 0; i < n; ++i) {
    const auto in = balance_instance(o.seed, i);
    const Rational va = volume(in.a);
    try {
      const auto res = kkm_cone_translate(in.a, in.b, in.frame, kBalanceTol);
      if (res.residual <= kBalanceTol * va) ++kkm_ok;
      kkm_iters = std::max(kkm_iters, res.iterations);
    } catch (const ConvergenceError&) {
    }
    try {
      const auto res = balanced_hyperplane(in.a, in.b, {}, Anchor{in.frame.apex(), {}}, kBalanceTol);
      if (res.residual <= kBalanceTol * va) ++hyper_ok;
      hyper_iters = std::max(hyper_iters, res.iterations);
    } catch (const ConvergenceError&) {
    }
  }
  // Symmetric fixtures: A = B gives v = 0; a mirror pair across x_1 = 0 is
  // balanced exactly by the line x_2 = 0 through an anchor on the mirror.
  const GridSpec grid(2, Rational(1, 8));
  std::vector<CellSet> shapes{gen::box_cells(grid, {-4, -3, 0}, {8, 6, 0}),
                              gen::ellipse_cells(grid, {0, 0, 0}, {0.9, 0.5, 0}, 0.4),
                              set_union(gen::box_cells(grid, {0, -4, 0}, {3, 8, 0}), gen::box_cells(grid, {0, -4, 0}, {7, 3, 0}))};
  size_t fixtures = 0, exact = 0;
  for (const auto& s : shapes) {
    ++fixtures;
    const ConeFrame frame(zero_point(2), Simplex(centered_simplex(2)));
    try {
      const auto res = kkm_cone_translate(s, s, frame, kBalanceTol);
      if (res.residual == 0 && res.witness == zero_point(2)) ++exact;
    } catch (const ConvergenceError&) {
    }
    ++fixtures;
    const auto same = balanced_hyperplane(s, s, {}, Anchor{zero_point(2), {}}, kBalanceTol);
    if (same.residual == 0 && same.parameter == 0) ++exact;
    ++fixtures;
    const auto mirror = balanced_hyperplane(s, reflected(s, 0), {}, Anchor{zero_point(2), {}}, kBalanceTol);
    if (mirror.residual == 0) ++exact;
  }
  const auto un = static_cast<size_t>(n);
  CriterionResult r{6, "balancing", kkm_ok == un && hyper_ok == un && exact == fixtures, "", 0};
  r.detail = "kkm " + ratio(kkm_ok, un) + " (max " + std::to_string(kkm_iters) + " iterations), hyperplane " +
             ratio(hyper_ok, un) + " (max " + std::to_string(hyper_iters) + " iterations) within 1e-6 |A|, exact witness on " +
             ratio(exact, fixtures) + " symmetric fixtures";
  return r;
}

CriterionResult partition(const VerifyOptions& o) {
  const int n = o.trials.value_or(20);
  size_t conserved = 0, splits = 0, splits_ok = 0, failures = 0;
  for (int i = 0; i < n; ++i) {
    auto rng = gen::instance_rng(o.seed ^ 0x9a7, static_cast<std::uint64_t>(i));
    const int dim = i % 4 == 3 ? 3 : 2;
    const GridSpec grid(dim, dim == 2 ? Rational(1, 16) : Rational(1, 4));
    std::uniform_real_distribution<double> rad(0.6, 1.2), ang(0.0, 3.14159);
    CellSet a = gen::ellipse_cells(grid, {0, 0, 0}, {rad(rng), rad(rng), rad(rng)}, ang(rng));
    const std::int64_t side = dim == 2 ? 5 : 2;
    Cell lo = a.lower();
    for (int k = 0; k < dim; ++k) lo[k] += gen::uniform(rng, 0, std::max<std::int64_t>(0, a.upper()[k] - a.lower()[k] - side));
    a = set_difference(a, gen::box_cells(grid, lo, Cell{side, side, side}));
    const PartitionTree tree = linear_partition_process(a, Weight(Rational(1, 2)), Rational(1, 4), dim == 2 ? 3 : 2);
    Rational leaf_volume = 0, leaf_measure = 0;
    for (size_t id : tree.leaves()) {
      leaf_volume += tree.nodes[id].simplex_volume;
      leaf_measure += tree.nodes[id].measure_in_a;
    }
    if (leaf_volume == polytope_volume(convex_hull(a)) && leaf_volume == tree.hull_volume && leaf_measure == volume(a))
      ++conserved;
    const Rational min_ratio(1, dim + 2);
    for (const auto& node : tree.nodes) {
      if (!node.failure.empty()) ++failures;
      if (!node.split) continue;
      ++splits;
      Rational children = 0;
      for (size_t c : node.children) children += tree.nodes[c].simplex_volume;
      const bool ratios = std::all_of(node.split->ratios.begin(), node.split->ratios.end(),
                                      [&](const Rational& q) { return q >= min_ratio; });
      if (ratios && central_point_ok(node.simplex, node.split->x) && children == node.simplex_volume) ++splits_ok;
    }
  }
  const auto un = static_cast<size_t>(n);
  CriterionResult r{7, "partition", conserved == un && splits_ok == splits && splits > 0, "", 0};
  r.detail = "leaf volumes sum to |co(A)| on " + ratio(conserved, un) + " trees, " + ratio(splits_ok, splits) +
             " subdivisions keep ratio >= 1/(d+2) and contraction <= (d+1)/(d+2), " + std::to_string(failures) +
             " unsplit dense nodes";
  return r;
}

CriterionResult sublinearity(const VerifyOptions& o) {
  const int n_exact = o.trials.value_or(100), n_general = o.trials.value_or(50);
  size_t exact_ok = 0, general_ok = 0;
  double worst_tau = 0;
  for (int i = 0; i < n_exact; ++i) {
    const auto s = exact_split(o.seed, i);
    const Weight t(s.t);
    const Rational va = volume(s.a);
    Rational lhs = 0;
    for (const auto& [pa, pb] : s.pieces) lhs += volume(pa) / va * delta_t(pa, pb, t);
    if (lhs <= delta_t(s.a, s.b, t)) ++exact_ok;
  }
  for (int i = 0; i < n_general; ++i) {
    const auto s = general_split(o.seed, i);
    const Weight t(s.t);
    Rational pieces = 0;
    for (const auto& [pa, pb] : s.pieces) pieces += combined_volume(pa, pb, t);
    if (pieces <= minkowski_volume(s.a, s.b, t) + s.tau) ++general_ok;
    worst_tau = std::max(worst_tau, to_double(s.tau / volume(s.a)));
  }
  const auto ue = static_cast<size_t>(n_exact), ug = static_cast<size_t>(n_general);
  CriterionResult r{8, "sublinearity", exact_ok == ue && general_ok == ug && worst_tau < kMaxTauRatio, "", 0};
  r.detail = "exact on " + ratio(exact_ok, ue) + " 1D/axis-aligned splits, within tau on " + ratio(general_ok, ug) +
             " cone splits at pitch 1/64, max tau/|A| " + fixed(worst_tau) + " (limit " + fixed(kMaxTauRatio, 2) + ")";
  return r;
}

CriterionResult steiner(const VerifyOptions& o) {
  const int n = o.trials.value_or(100);
  size_t preserved = 0;
  for (int i = 0; i < n; ++i) {
    auto rng = gen::instance_rng(o.seed ^ 0x57e, static_cast<std::uint64_t>(i));
    const int dim = 2 + i % 2;
    const CellSet a = gen::random_blob(rng, GridSpec(dim, Rational(1, 4)), static_cast<size_t>(gen::uniform(rng, 1, 150)));
    const int axis = static_cast<int>(gen::uniform(rng, 0, dim - 1));
    const CellSet s = steiner_symmetrize(a, axis);
    if (volume(s) == volume(a) && slice_counts(s, axis) == slice_counts(a, axis)) ++preserved;
  }
  const Weight half(Rational(1, 2));
  size_t shrink = 0;
  std::string incs;
  for (int k = 0; k < 10; ++k) {
    Rational inc[2];
    for (std::int64_t scale : {1, 2}) {
      const auto [a, b] = steiner_fixture(k, scale);
      const Rational d = delta_t(steiner_symmetrize(a, 0), steiner_symmetrize(b, 0), half) - delta_t(a, b, half);
      inc[scale - 1] = d > 0 ? d : Rational(0);
    }
    if (inc[0] == 0 || inc[1] <= inc[0] / 2) ++shrink;
    incs += (k ? " " : "") + fixed(to_double(inc[0]), 5) + "->" + fixed(to_double(inc[1]), 5);
  }
  const auto un = static_cast<size_t>(n);
  CriterionResult r{9, "steiner", preserved == un && shrink == 10, "", 0};
  r.detail = "counts preserved on " + ratio(preserved, un) + " sets, increase shrinks on " + ratio(shrink, 10) +
             " fixtures [" + incs + "]";
  return r;
}

CriterionResult trend(const VerifyOptions& o) {
  const ScenarioResult res = trend_run(o.seed, o.trials.value_or(40));
  std::vector<std::pair<double, double>> gap, sym;
  for (const auto& row : res.rows) {
    const auto& rep = row.report;
    if (!rep.delta_t) continue;
    const double d = to_double(*rep.delta_t);
    if (d < kTrendDeltaLo || d > kTrendDeltaHi || *rep.hull_gap_a <= 0 || *rep.symdiff_opt <= 0) continue;
    gap.emplace_back(std::log(d), std::log(to_double(*rep.hull_gap_a)));
    sym.emplace_back(std::log(d), std::log(to_double(*rep.symdiff_opt)));
  }
  if (gap.size() < 3) return {10, "trend", false, "fewer than 3 instances with delta_t in range", 0};
  const double sg = fit_slope(gap), ss = fit_slope(sym);
  // Constants: mean of log(value) - slope * log(delta).
  auto intercept = [](const std::vector<std::pair<double, double>>& xy, double slope) {
    double c = 0;
    for (const auto& [x, y] : xy) c += y - slope * x;
    return std::exp(c / static_cast<double>(xy.size()));
  };
  const bool ok = std::fabs(sg - kHullSlope) <= kTrendSlopeTol && std::fabs(ss - kSymdiffSlope) <= kTrendSlopeTol;
  CriterionResult r{10, "trend", ok, "", 0};
  r.detail = std::to_string(gap.size()) + " instances, hull_gap slope " + fixed(sg, 3) + " (constant " +
             fixed(intercept(gap, sg), 3) + "), symdiff slope " + fixed(ss, 3) + " (constant " + fixed(intercept(sym, ss), 3) +
             "), targets 1.0 and 0.5 +- " + fixed(kTrendSlopeTol, 2);
  return r;
}

struct Entry {
  const char* suite;
  std::function<CriterionResult(const VerifyOptions&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"oracle", oracle_equivalence}, {"bm", bm_nonnegativity}, {"sharp", sharp_law},       {"freiman", freiman},
      {"box-hull", box_hull},         {"balancing", balancing}, {"partition", partition}, {"sublinearity", sublinearity},
      {"steiner", steiner},           {"trend", trend}};
  return entries;
}

}  // namespace

std::vector<oracle::CrosscheckReport> crosscheck_run(int trials, std::uint64_t seed) {
  std::vector<oracle::CrosscheckReport> out;
  for (const auto& in : oracle_corpus(seed, trials)) out.push_back(oracle::crosscheck_instance(in.a, in.b, Weight(in.t), in.id));
  return out;
}

std::vector<std::string> verify_suites() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.emplace_back(e.suite);
  out.emplace_back("all");
  return out;
}

int suite_criterion(const std::string& suite) {
  if (suite == "all") return 0;
  const auto& reg = registry();
  for (size_t i = 0; i < reg.size(); ++i)
    if (suite == reg[i].suite) return static_cast<int>(i) + 1;
  throw InvalidArgument("unknown verify suite: " + suite);
}

CriterionResult run_criterion(int id, const VerifyOptions& options) {
  const auto& reg = registry();
  if (id < 1 || id > static_cast<int>(reg.size())) throw InvalidArgument("criterion must be 1.." + std::to_string(reg.size()));
  if (options.trials && *options.trials < 1) throw InvalidArgument("trials must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r = reg[static_cast<size_t>(id - 1)].run(options);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite, const VerifyOptions& options) {
  const int id = suite_criterion(suite);
  std::vector<CriterionResult> out;
  if (id != 0) {
    out.push_back(run_criterion(id, options));
    return out;
  }
  for (int i = 1; i <= static_cast<int>(registry().size()); ++i) out.push_back(run_criterion(i, options));
  return out;
}

std::string format_result(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " [" + r.name + "] " + (r.pass ? "PASS" : "FAIL") + ": " + r.detail +
         " (" + fixed(r.seconds, 2) + " s)";
}

}  // namespace bmlab
