#include "bmlab/minkowski.hpp"

#include <algorithm>
#include <map>

namespace bmlab {

namespace {

/// Half-open interval along the last axis.
using Interval = std::pair<std::int64_t, std::int64_t>;

struct Row {
  Cell prefix;
  std::vector<Interval> runs;
};

std::vector<Row> rows_of(const CellSet& s) {
  const int last = s.dim() - 1;
  std::vector<Row> rows;
  for (const auto& c : s.cells()) {
    Cell pre = c;
    pre[last] = 0;
    if (rows.empty() || rows.back().prefix != pre) rows.push_back({pre, {}});
    auto& runs = rows.back().runs;
    if (!runs.empty() && runs.back().second == c[last]) ++runs.back().second;
    else runs.emplace_back(c[last], c[last] + 1);
  }
  return rows;
}

void merge(std::vector<Interval>& v) {
  std::sort(v.begin(), v.end());
  size_t k = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (k > 0 && v[i].first <= v[k - 1].second) v[k - 1].second = std::max(v[k - 1].second, v[i].second);
    else v[k++] = v[i];
  }
  v.resize(k);
}

/// Rows of tA + (1-t)B on the grid of pitch h/q, each a merged interval list.
///
/// With t = p/q and r = q - p, cells a, b give the refined block
/// p*a + r*b + {0..q-1}^dim. Along the last axis a run pair [x0, x1) x [y0, y1)
/// sweeps starts p*x + r*y in steps of p or r, both below q, so its blocks
/// fill the single interval [p*x0 + r*y0, p*(x1-1) + r*(y1-1) + q).
std::map<Cell, std::vector<Interval>> combine_rows(const CellSet& a, const CellSet& b, const Weight& t) {
  const std::int64_t p = t.num(), q = t.den(), r = q - p;
  const int d = a.dim();
  const auto rows_a = rows_of(a), rows_b = rows_of(b);
  std::map<Cell, std::vector<Interval>> base;
  for (const auto& ra : rows_a)
    for (const auto& rb : rows_b) {
      Cell key{};
      for (int i = 0; i + 1 < d; ++i) key[i] = p * ra.prefix[i] + r * rb.prefix[i];
      auto& dst = base[key];
      for (const auto& x : ra.runs)
        for (const auto& y : rb.runs) dst.emplace_back(p * x.first + r * y.first, p * (x.second - 1) + r * (y.second - 1) + q);
      if (dst.size() > 4096) merge(dst);
    }
  for (auto& [key, v] : base) merge(v);
  if (d == 1) return base;

  // Dilate by {0..q-1} along every prefix axis.
  std::map<Cell, std::vector<Interval>> out;
  std::int64_t offsets = 1;
  for (int i = 0; i + 1 < d; ++i) offsets *= q;
  for (const auto& [key, v] : base)
    for (std::int64_t o = 0; o < offsets; ++o) {
      Cell target = key;
      std::int64_t rest = o;
      for (int i = 0; i + 1 < d; ++i) {
        target[i] += rest % q;
        rest /= q;
      }
      auto& dst = out[target];
      dst.insert(dst.end(), v.begin(), v.end());
    }
  for (auto& [key, v] : out) merge(v);
  return out;
}

GridSpec fine_grid(const CellSet& a, const Weight& t) {
  return GridSpec(a.dim(), a.pitch() / Rational(static_cast<long>(t.den())));
}

}  // namespace

CellSet minkowski_combine(const CellSet& a, const CellSet& b, const Weight& t) {
  require_same_grid(a, b, "minkowski_combine");
  const GridSpec fine = fine_grid(a, t);
  if (a.empty() || b.empty()) return CellSet(fine);
  const int last = a.dim() - 1;
  std::vector<Cell> cells;
  for (const auto& [key, v] : combine_rows(a, b, t))
    for (const auto& [lo, hi] : v)
      for (std::int64_t x = lo; x < hi; ++x) {
        Cell c = key;
        c[last] = x;
        cells.push_back(c);
      }
  return CellSet(fine, std::move(cells));
}

Rational minkowski_volume(const CellSet& a, const CellSet& b, const Weight& t) {
  require_same_grid(a, b, "minkowski_volume");
  if (a.empty() || b.empty()) return 0;
  std::int64_t count = 0;
  for (const auto& [key, v] : combine_rows(a, b, t))
    for (const auto& [lo, hi] : v) count += hi - lo;
  return Rational(static_cast<long>(count)) * fine_grid(a, t).cell_volume();
}

}  // namespace bmlab
