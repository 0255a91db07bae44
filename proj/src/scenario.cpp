#include "bmlab/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bmlab/generators.hpp"

namespace bmlab {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  bool on;
  Clock::time_point start = Clock::now();
  double ms() const { return on ? std::chrono::duration<double, std::milli>(Clock::now() - start).count() : 0; }
};

std::string id(const std::string& family, size_t i) { return family + "-" + std::to_string(i); }

void check_delta(ScenarioResult& res, const DeficitReport& r) {
  if (r.delta_t && *r.delta_t < 0) res.failures.push_back(r.scenario_id + ": delta_t < 0");
}

CellSet box_to_cells(const Box& b, const Rational& pitch) {
  const int d = b.dim();
  Cell lo{}, size{};
  for (int i = 0; i < d; ++i) {
    const Rational l = b.lo[i] / pitch, u = b.hi[i] / pitch;
    if (l.get_den() != 1 || u.get_den() != 1) throw InvalidArgument("box corners off the cell lattice");
    lo[i] = l.get_num().get_si();
    size[i] = Rational(u - l).get_num().get_si();
  }
  return gen::box_cells(GridSpec(d, pitch), lo, size);
}

void sharp_family(const ScenarioSpec& spec, ScenarioResult& res) {
  res.extra_columns = {"closed_form_delta", "closed_form_ok"};
  std::vector<Rational> hs = spec.h_list;
  if (hs.empty())
    for (int k = 1; k <= 6; ++k) hs.push_back(Rational(1, 1L << k));
  const Weight t(spec.t);
  for (size_t i = 0; i < hs.size(); ++i) {
    Timer timer{spec.timing};
    const auto [a, b] = gen::sharp_pair(hs[i], spec.dim);
    DeficitReport r = deficit_report(a, b, t, id("sharp", i));
    r.runtime_ms = timer.ms();
    const Rational& h = hs[i];
    const Rational closed = t.value() * t.complement() * h * h / (Rational(1) + h);
    const bool ok = r.delta_t && *r.delta_t == closed;
    if (!ok) res.failures.push_back(r.scenario_id + ": delta_t differs from t(1-t)h^2/(1+h)");
    check_delta(res, r);
    res.rows.push_back({std::move(r), {to_string(closed), ok ? "1" : "0"}});
  }
}

void freiman1d(const ScenarioSpec& spec, ScenarioResult& res) {
  res.extra_columns = {"applicable", "bound_holds"};
  const Weight t(spec.t);
  const Rational pitch = spec.pitch.value_or(Rational(1, 4));
  for (int i = 0; i < spec.trials; ++i) {
    Timer timer{spec.timing};
    auto rng = gen::instance_rng(spec.seed, static_cast<std::uint64_t>(i));
    std::optional<FreimanReport> rep;
    std::pair<CellSet, CellSet> pair;
    for (int attempt = 0; attempt < 1000 && !(rep && rep->applicable); ++attempt) {
      pair = gen::near_interval_pair(rng, pitch, 40);
      if (pair.first.size() != pair.second.size()) continue;
      rep = freiman_check_1d(pair.first, pair.second, t);
    }
    if (!rep || !rep->applicable) throw InvalidArgument("freiman1d: no instance with delta < min(t, 1-t) for this t");
    DeficitReport r = deficit_report(pair.first, pair.second, t, id("freiman1d", i));
    r.runtime_ms = timer.ms();
    if (!rep->holds()) res.failures.push_back(r.scenario_id + ": Freiman bound violated");
    check_delta(res, r);
    res.rows.push_back({std::move(r), {"1", rep->holds() ? "1" : "0"}});
  }
}

void box_hull(const ScenarioSpec& spec, ScenarioResult& res) {
  res.extra_columns = {"lhs", "rhs", "bound_holds"};
  const Weight t(spec.t);
  const Rational pitch = spec.pitch.value_or(Rational(1, 4));
  if (pitch.get_num() != 1) throw InvalidArgument("box-hull: pitch must be 1/n");
  for (int i = 0; i < spec.trials; ++i) {
    Timer timer{spec.timing};
    auto rng = gen::instance_rng(spec.seed, static_cast<std::uint64_t>(i));
    const auto [r_box, t_box] = gen::random_box_pair(rng, spec.dim, pitch.get_den().get_si());
    const BoxHullReport rep = box_hull_bound_check(r_box, t_box);
    DeficitReport r = deficit_report(box_to_cells(r_box, pitch), box_to_cells(t_box, pitch), t, id("box-hull", i));
    r.runtime_ms = timer.ms();
    if (!rep.holds) res.failures.push_back(r.scenario_id + ": box-hull bound violated");
    res.rows.push_back({std::move(r), {to_string(rep.lhs), to_string(rep.rhs), rep.holds ? "1" : "0"}});
  }
}

void perturbed_convex(const ScenarioSpec& spec, ScenarioResult& res) {
  res.extra_columns = {"j", "block"};
  const Weight t(spec.t);
  const Rational pitch = spec.pitch.value_or(Rational(1, 128));
  for (int i = 0; i < spec.trials; ++i) {
    Timer timer{spec.timing};
    auto rng = gen::instance_rng(spec.seed, static_cast<std::uint64_t>(i));
    const std::int64_t j = gen::uniform(rng, 3, 25);
    const double rho = std::uniform_real_distribution<double>(0.5, 1.0)(rng);
    const auto block = std::max<std::int64_t>(1, std::llround(rho * static_cast<double>(j)));
    const auto [a, b] = gen::perturbed_convex_pair(pitch, j, block);
    DeficitReport r = deficit_report(a, b, t, id("perturbed-convex", i));
    r.runtime_ms = timer.ms();
    check_delta(res, r);
    res.rows.push_back({std::move(r), {std::to_string(j), std::to_string(block)}});
  }
}

void intconvex(const ScenarioSpec& spec, ScenarioResult& res) {
  res.extra_columns = {"chr_lhs", "chr_rhs"};
  const Weight t(spec.t);
  const Rational pitch = spec.pitch.value_or(Rational(1, 16));
  const GridSpec grid(spec.dim, pitch);
  for (int i = 0; i < spec.trials; ++i) {
    Timer timer{spec.timing};
    auto rng = gen::instance_rng(spec.seed, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> rad(0.5, 1.5), off(-0.4, 0.4), ang(0.0, 3.14159);
    const CellSet x = gen::ellipse_cells(grid, {0, 0, 0}, {rad(rng), rad(rng), rad(rng)}, ang(rng));
    const CellSet y = gen::ellipse_cells(grid, {off(rng), off(rng), off(rng)}, {rad(rng), rad(rng), rad(rng)}, ang(rng));
    const HullRatio hr = common_hull_ratio(x, y);
    DeficitReport r = deficit_report(x, y, t, id("intconvex", i));
    r.runtime_ms = timer.ms();
    check_delta(res, r);
    res.rows.push_back({std::move(r), {to_string(hr.lhs), to_string(hr.rhs)}});
  }
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"sharp-family", "freiman1d", "box-hull", "perturbed-convex", "intconvex"};
}

ScenarioResult run_scenario(const ScenarioSpec& spec) {
  if (spec.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (spec.dim < 1 || spec.dim > kMaxExactDim) throw InvalidArgument("dim must be 1..3");
  ScenarioResult res;
  res.name = spec.name;
  if (spec.name == "sharp-family") sharp_family(spec, res);
  else if (spec.name == "freiman1d") freiman1d(spec, res);
  else if (spec.name == "box-hull") box_hull(spec, res);
  else if (spec.name == "perturbed-convex") perturbed_convex(spec, res);
  else if (spec.name == "intconvex") {
    if (spec.dim < 2) throw InvalidArgument("intconvex needs dim >= 2");
    intconvex(spec, res);
  } else {
    throw InvalidArgument("unknown scenario: " + spec.name);
  }
  return res;
}

std::string scenario_csv(const ScenarioResult& result) {
  std::ostringstream os;
  os << deficit_csv_header();
  for (const auto& c : result.extra_columns) os << ',' << c;
  os << '\n';
  for (const auto& row : result.rows) {
    os << deficit_csv_row(row.report);
    for (const auto& v : row.extra) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

std::string plot_data(const ScenarioResult& result) {
  std::ostringstream os;
  os.precision(17);
  os << "# log_delta log_symdiff\n";
  for (const auto& row : result.rows) {
    const auto& r = row.report;
    if (!r.delta_t || !r.symdiff_opt || *r.delta_t <= 0 || *r.symdiff_opt <= 0) continue;
    os << std::log(to_double(*r.delta_t)) << ' ' << std::log(to_double(*r.symdiff_opt)) << '\n';
  }
  return os.str();
}

void emit_report(const ScenarioResult& result, const std::string& csv_path, const std::string& plot_path) {
  if (result.rows.empty()) throw InvalidArgument("emit_report: no rows");
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
    if (!out) throw InvalidArgument("write failed: " + path);
  };
  write(csv_path, scenario_csv(result));
  if (!plot_path.empty()) write(plot_path, plot_data(result));
}

double fit_slope(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2) throw InvalidArgument("fit_slope: need at least two points");
  double mx = 0, my = 0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : xy) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0) throw InvalidArgument("fit_slope: constant x");
  return sxy / sxx;
}

}  // namespace bmlab
