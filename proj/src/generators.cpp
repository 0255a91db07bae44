#include "bmlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bmlab::gen {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

CellSet box_cells(const GridSpec& grid, const Cell& lo, const Cell& size) {
  std::vector<Cell> cells;
  const int d = grid.dim;
  const std::int64_t nz = d > 2 ? size[2] : 1, ny = d > 1 ? size[1] : 1;
  for (std::int64_t x = 0; x < size[0]; ++x)
    for (std::int64_t y = 0; y < ny; ++y)
      for (std::int64_t z = 0; z < nz; ++z) {
        Cell c{};
        c[0] = lo[0] + x;
        if (d > 1) c[1] = lo[1] + y;
        if (d > 2) c[2] = lo[2] + z;
        cells.push_back(c);
      }
  return CellSet(grid, std::move(cells));
}

CellSet random_blob(std::mt19937_64& rng, const GridSpec& grid, size_t n) {
  const int d = grid.dim;
  std::set<Cell> in{Cell{}};
  std::vector<Cell> order{Cell{}};
  while (order.size() < n) {
    Cell c = order[static_cast<size_t>(uniform(rng, 0, static_cast<std::int64_t>(order.size()) - 1))];
    const auto axis = static_cast<int>(uniform(rng, 0, d - 1));
    c[axis] += uniform(rng, 0, 1) ? 1 : -1;
    if (in.insert(c).second) order.push_back(c);
  }
  return CellSet(grid, std::move(order));
}

CellSet ellipse_cells(const GridSpec& grid, const std::array<double, 3>& center, const std::array<double, 3>& radii,
                      double angle) {
  const int d = grid.dim;
  const double h = to_double(grid.pitch);
  const double ca = std::cos(angle), sa = std::sin(angle);
  Cell lo{}, hi{};
  const double reach = *std::max_element(radii.begin(), radii.begin() + d);
  for (int i = 0; i < d; ++i) {
    lo[i] = static_cast<std::int64_t>(std::floor((center[i] - reach) / h)) - 1;
    hi[i] = static_cast<std::int64_t>(std::ceil((center[i] + reach) / h)) + 1;
  }
  std::vector<Cell> cells;
  for (std::int64_t x = lo[0]; x <= hi[0]; ++x)
    for (std::int64_t y = (d > 1 ? lo[1] : 0); y <= (d > 1 ? hi[1] : 0); ++y)
      for (std::int64_t z = (d > 2 ? lo[2] : 0); z <= (d > 2 ? hi[2] : 0); ++z) {
        const Cell c{x, y, z};
        std::array<double, 3> p{};
        for (int i = 0; i < d; ++i) p[i] = (static_cast<double>(c[i]) + 0.5) * h - center[i];
        if (d >= 2) {
          const double u = ca * p[0] + sa * p[1], v = -sa * p[0] + ca * p[1];
          p[0] = u;
          p[1] = v;
        }
        double q = 0;
        for (int i = 0; i < d; ++i) q += (p[i] / radii[i]) * (p[i] / radii[i]);
        if (q <= 1) cells.push_back(c);
      }
  return CellSet(grid, std::move(cells));
}

CellSet trim_to(const CellSet& s, size_t n, const std::array<double, 3>& center) {
  if (n >= s.size()) return s;
  const double h = to_double(s.pitch());
  std::vector<std::pair<double, Cell>> keyed;
  for (const auto& c : s.cells()) {
    double q = 0;
    for (int i = 0; i < s.dim(); ++i) {
      const double x = (static_cast<double>(c[i]) + 0.5) * h - center[i];
      q += x * x;
    }
    keyed.emplace_back(q, c);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Cell> cells;
  for (size_t i = 0; i < n; ++i) cells.push_back(keyed[i].second);
  return CellSet(s.grid(), std::move(cells));
}

std::pair<CellSet, CellSet> sharp_pair(const Rational& h, int dim) {
  if (dim < 2) throw InvalidArgument("sharp_pair: dim must be >= 2");
  const Rational inv = Rational(1) / h;
  if (inv.get_den() != 1) throw InvalidArgument("sharp_pair: 1/h must be an integer");
  const std::int64_t n = inv.get_num().get_si();
  const GridSpec grid(dim, h);
  Cell size{n + 1, n, n};
  CellSet a = box_cells(grid, Cell{}, size);
  return {a, transposed(a, 0, 1)};
}

std::pair<CellSet, CellSet> near_interval_pair(std::mt19937_64& rng, const Rational& pitch, size_t max_cells) {
  const GridSpec grid(1, pitch);
  const auto n = static_cast<size_t>(uniform(rng, 4, static_cast<std::int64_t>(max_cells)));
  auto make = [&]() {
    std::vector<Cell> cells;
    std::int64_t pos = uniform(rng, -5, 5);
    const auto gaps = uniform(rng, 0, 3);
    std::set<size_t> gap_after;
    for (std::int64_t g = 0; g < gaps; ++g) gap_after.insert(static_cast<size_t>(uniform(rng, 1, static_cast<std::int64_t>(n) - 1)));
    for (size_t i = 0; i < n; ++i) {
      if (gap_after.count(i)) pos += uniform(rng, 1, 2);
      cells.push_back(Cell{pos++, 0, 0});
    }
    return CellSet(grid, std::move(cells));
  };
  CellSet a = make();
  CellSet b = make();
  return {a, b};
}

std::pair<Box, Box> random_box_pair(std::mt19937_64& rng, int dim, std::int64_t den) {
  auto at = [&](std::int64_t k) { return fraction(static_cast<long>(k), den); };
  Box r{Point(dim), Point(dim)}, t{Point(dim), Point(dim)};
  for (int i = 0; i < dim; ++i) {
    const std::int64_t rlo = uniform(rng, -4 * den, 2 * den), rhi = rlo + uniform(rng, 1, 4 * den);
    // T overlaps R on this axis: tlo < rhi and thi > rlo.
    const std::int64_t tlo = uniform(rng, rlo - 2 * den, rhi - 1);
    const std::int64_t thi = std::max(tlo + uniform(rng, 1, 4 * den), rlo + 1);
    r.lo[i] = at(rlo);
    r.hi[i] = at(rhi);
    t.lo[i] = at(tlo);
    t.hi[i] = at(thi);
  }
  return {r, t};
}

std::pair<CellSet, CellSet> perturbed_convex_pair(const Rational& h, std::int64_t j, std::int64_t block) {
  const Rational inv = Rational(1) / h;
  if (inv.get_den() != 1) throw InvalidArgument("perturbed_convex_pair: 1/h must be an integer");
  const std::int64_t n = inv.get_num().get_si();
  if (j < 1 || block < 1 || block > n || block > n + j) throw InvalidArgument("perturbed_convex_pair: bad parameters");
  const GridSpec grid(2, h);
  std::vector<Cell> cells;
  for (std::int64_t x = 0; x < n + j; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      if (!(x >= n + j - block && y >= n - block)) cells.push_back(Cell{x, y, 0});
  CellSet a(grid, std::move(cells));
  return {a, transposed(a, 0, 1)};
}

std::pair<CellSet, CellSet> random_equal_pair(std::mt19937_64& rng, int dim, size_t max_cells, const Rational& pitch) {
  const GridSpec grid(dim, pitch);
  const auto n = static_cast<size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_cells)));
  CellSet a = random_blob(rng, grid, n);
  CellSet b = random_blob(rng, grid, n);
  Cell z{};
  for (int i = 0; i < dim; ++i) z[i] = uniform(rng, -3, 3);
  return {a, b.translated(z)};
}

}  // namespace bmlab::gen
