#include <algorithm>
#include <cmath>

#include "bmlab/measure.hpp"
#include "bmlab/partition.hpp"

namespace bmlab {

namespace {

// Cells whose box meets both open sides of n.x = level.
size_t straddling(const CellSet& s, const std::vector<Cell>& cells, const HalfSpace& h, const Rational& level) {
  size_t n = 0;
  for (const auto& c : cells) {
    Rational lo = dot(h.normal, s.corner(c)), hi = lo;
    for (const auto& x : h.normal) (x < 0 ? lo : hi) += x * s.pitch();
    if (lo < level && level < hi) ++n;
  }
  return n;
}

}  // namespace

SubsetMatch subset_match(const CellSet& a, const CellSet& b, const Polytope& c, const Rational& tol) {
  require_same_grid(a, b, "subset_match");
  if (a.size() != b.size()) throw InvalidArgument("subset_match: volumes differ");
  if (c.dim() != a.dim()) throw InvalidArgument("subset_match: polytope dimension mismatch");
  const Rational cv = a.grid().cell_volume();
  if (tol < cv) throw InvalidArgument("subset_match: tolerance below one cell volume");

  SubsetMatch out{CellSet(a.grid()), region_measure(a, c), 0};
  if (c.is_empty() || c.degenerate() || out.target == 0) return out;

  size_t a_cut = 0;
  for (const auto& cell : a.cells()) {
    const Rational m = region_measure(CellSet(a.grid(), {cell}), c);
    if (m > 0 && m < cv) ++a_cut;
  }

  std::vector<Cell> current = b.cells();
  std::vector<HalfSpace> prefix;
  size_t b_cut = 0;
  for (const auto& facet : c.facets()) {
    prefix.push_back(facet);
    const Rational want = region_measure(a, prefix) / cv;
    const mpz_class k = floor(want + Rational(1, 2));
    const size_t keep = std::min<size_t>(current.size(), k.get_ui());

    std::vector<std::pair<Rational, Cell>> keyed;
    for (const auto& cell : current) keyed.emplace_back(dot(facet.normal, b.center(cell)), cell);
    std::sort(keyed.begin(), keyed.end());
    if (keep > 0 && keep < keyed.size()) b_cut += straddling(b, current, facet, keyed[keep - 1].first);
    current.clear();
    for (size_t i = 0; i < keep; ++i) current.push_back(keyed[i].second);
  }
  out.subset = CellSet(b.grid(), std::move(current));
  out.tau = Rational(static_cast<long>(a_cut + b_cut)) * cv;
  return out;
}

}  // namespace bmlab
