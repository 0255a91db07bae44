#include "bmlab/cell_set.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace bmlab {

GridSpec::GridSpec(int d, Rational h) : dim(d), pitch(std::move(h)) {
  if (dim < 1) throw InvalidArgument("grid dimension must be >= 1");
  if (dim > kMaxExactDim)
    throw InvalidArgument("exact mode supports dimensions 1..3, got " + std::to_string(dim));
  pitch.canonicalize();
  if (pitch <= 0) throw InvalidArgument("grid pitch must be positive");
}

namespace {

void check_unused_zero(const GridSpec& g, const Cell& c) {
  for (int i = g.dim; i < kMaxExactDim; ++i)
    if (c[i] != 0) throw InvalidArgument("cell has nonzero coordinate beyond grid dimension");
}

}  // namespace

CellSet::CellSet(GridSpec grid, std::vector<Cell> cells) : grid_(std::move(grid)), cells_(std::move(cells)) {
  for (const auto& c : cells_) check_unused_zero(grid_, c);
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end())
    throw InvalidArgument("duplicate cell in cell set");
}

CellSet CellSet::from_union(GridSpec grid, std::vector<Cell> cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return CellSet(std::move(grid), std::move(cells));
}

bool CellSet::contains(const Cell& c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

Cell CellSet::lower() const {
  if (cells_.empty()) throw InvalidArgument("bounds of an empty cell set");
  Cell lo = cells_.front();
  for (const auto& c : cells_)
    for (int i = 0; i < dim(); ++i) lo[i] = std::min(lo[i], c[i]);
  return lo;
}

Cell CellSet::upper() const {
  if (cells_.empty()) throw InvalidArgument("bounds of an empty cell set");
  Cell hi = cells_.front();
  for (const auto& c : cells_)
    for (int i = 0; i < dim(); ++i) hi[i] = std::max(hi[i], c[i]);
  return hi;
}

Point CellSet::corner(const Cell& c) const {
  Point p(dim());
  for (int i = 0; i < dim(); ++i) p[i] = pitch() * Rational(static_cast<long>(c[i]));
  return p;
}

Point CellSet::center(const Cell& c) const {
  Point p(dim());
  for (int i = 0; i < dim(); ++i) p[i] = pitch() * (Rational(static_cast<long>(c[i])) + Rational(1, 2));
  return p;
}

bool CellSet::contains_point(const Point& p) const {
  // A point can lie on the closed boundary of up to 2^dim cells.
  std::array<std::int64_t, kMaxExactDim> base{};
  std::array<bool, kMaxExactDim> on_edge{};
  for (int i = 0; i < dim(); ++i) {
    Rational q = p[i] / pitch();
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    base[i] = f.get_si();
    on_edge[i] = (q == Rational(f));
  }
  for (int mask = 0; mask < (1 << dim()); ++mask) {
    Cell c{};
    bool valid = true;
    for (int i = 0; i < dim(); ++i) {
      bool back = (mask >> i) & 1;
      if (back && !on_edge[i]) { valid = false; break; }
      c[i] = base[i] - (back ? 1 : 0);
    }
    if (valid && contains(c)) return true;
  }
  return false;
}

CellSet CellSet::translated(const Cell& z) const {
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (auto c : cells_) {
    for (int i = 0; i < dim(); ++i) c[i] += z[i];
    out.push_back(c);
  }
  return CellSet(grid_, std::move(out));
}

CellSet CellSet::refined(std::int64_t k) const {
  if (k < 1) throw InvalidArgument("refinement factor must be >= 1");
  if (k == 1) return *this;
  std::vector<Cell> out;
  std::int64_t per = 1;
  for (int i = 0; i < dim(); ++i) per *= k;
  out.reserve(cells_.size() * static_cast<size_t>(per));
  for (const auto& c : cells_) {
    for (std::int64_t idx = 0; idx < per; ++idx) {
      Cell r{};
      std::int64_t rem = idx;
      for (int i = 0; i < dim(); ++i) {
        r[i] = c[i] * k + rem % k;
        rem /= k;
      }
      out.push_back(r);
    }
  }
  return CellSet(GridSpec(dim(), pitch() / Rational(static_cast<long>(k))), std::move(out));
}

std::optional<CellSet> CellSet::coarsened(std::int64_t k) const {
  if (k < 1) throw InvalidArgument("coarsening factor must be >= 1");
  if (k == 1) return *this;
  auto floor_div = [k](std::int64_t v) { return v >= 0 ? v / k : -((-v + k - 1) / k); };
  std::map<Cell, std::int64_t> counts;
  for (const auto& c : cells_) {
    Cell b{};
    for (int i = 0; i < dim(); ++i) b[i] = floor_div(c[i]);
    ++counts[b];
  }
  std::int64_t per = 1;
  for (int i = 0; i < dim(); ++i) per *= k;
  std::vector<Cell> out;
  out.reserve(counts.size());
  for (const auto& [b, n] : counts) {
    if (n != per) return std::nullopt;
    out.push_back(b);
  }
  return CellSet(GridSpec(dim(), pitch() * Rational(static_cast<long>(k))), std::move(out));
}

Rational volume(const CellSet& s) {
  return Rational(static_cast<long>(s.size())) * s.grid().cell_volume();
}

CellSet canonicalize(const CellSet& s) {
  if (s.empty()) return s;
  CellSet cur = s;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    while (true) {
      auto next = cur.coarsened(p);
      if (!next) break;
      cur = std::move(*next);
    }
  }
  return cur;
}

void require_same_grid(const CellSet& a, const CellSet& b, const char* what) {
  if (a.grid() != b.grid())
    throw InvalidArgument(std::string(what) + ": grid mismatch (dim " + std::to_string(a.dim()) + " pitch " +
                          to_string(a.pitch()) + " vs dim " + std::to_string(b.dim()) + " pitch " +
                          to_string(b.pitch()) + ")");
}

size_t intersection_count(const CellSet& a, const CellSet& b) {
  require_same_grid(a, b, "intersection");
  size_t n = 0;
  auto i = a.cells().begin(), j = b.cells().begin();
  while (i != a.cells().end() && j != b.cells().end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++n; ++i; ++j; }
  }
  return n;
}

CellSet set_union(const CellSet& a, const CellSet& b) {
  require_same_grid(a, b, "union");
  std::vector<Cell> out;
  std::set_union(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(), std::back_inserter(out));
  return CellSet(a.grid(), std::move(out));
}

CellSet set_intersection(const CellSet& a, const CellSet& b) {
  require_same_grid(a, b, "intersection");
  std::vector<Cell> out;
  std::set_intersection(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
                        std::back_inserter(out));
  return CellSet(a.grid(), std::move(out));
}

CellSet set_difference(const CellSet& a, const CellSet& b) {
  require_same_grid(a, b, "difference");
  std::vector<Cell> out;
  std::set_difference(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
                      std::back_inserter(out));
  return CellSet(a.grid(), std::move(out));
}

CellSet reflected(const CellSet& s, int axis) {
  std::vector<Cell> out = s.cells();
  for (auto& c : out) c[axis] = -c[axis] - 1;
  return CellSet(s.grid(), std::move(out));
}

CellSet transposed(const CellSet& s, int axis_a, int axis_b) {
  std::vector<Cell> out = s.cells();
  for (auto& c : out) std::swap(c[axis_a], c[axis_b]);
  return CellSet(s.grid(), std::move(out));
}

}  // namespace bmlab
