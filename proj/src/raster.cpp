#include "raster.hpp"

#include <algorithm>
#include <bit>

namespace bmlab::detail {

Raster::Raster(int dim, Cell origin, Cell extent) : dim_(dim), origin_(origin), extent_(extent) {
  for (int i = dim_; i < kMaxExactDim; ++i) {
    origin_[i] = 0;
    extent_[i] = 1;
  }
  for (int i = 0; i < dim_; ++i)
    if (extent_[i] < 1) throw InvalidArgument("raster extent must be positive");
  words_ = static_cast<size_t>((extent_[dim_ - 1] + 63) / 64);
  rows_ = 1;
  for (int i = 0; i + 1 < dim_; ++i) rows_ *= static_cast<size_t>(extent_[i]);
  bits_.assign(rows_ * words_, 0);
}

Raster Raster::from_cells(const CellSet& s) {
  if (s.empty()) throw InvalidArgument("raster of an empty cell set");
  Cell lo = s.lower(), hi = s.upper(), ext{};
  for (int i = 0; i < kMaxExactDim; ++i) ext[i] = hi[i] - lo[i] + 1;
  Raster r(s.dim(), lo, ext);
  for (const auto& c : s.cells()) {
    Cell rel{};
    for (int i = 0; i < s.dim(); ++i) rel[i] = c[i] - lo[i];
    r.set(rel);
  }
  return r;
}

size_t Raster::row_index(const Cell& rel) const {
  size_t idx = 0;
  for (int i = 0; i + 1 < dim_; ++i) idx = idx * static_cast<size_t>(extent_[i]) + static_cast<size_t>(rel[i]);
  return idx;
}

Cell Raster::row_prefix(size_t row) const {
  Cell rel{};
  for (int i = dim_ - 2; i >= 0; --i) {
    rel[i] = static_cast<std::int64_t>(row % static_cast<size_t>(extent_[i]));
    row /= static_cast<size_t>(extent_[i]);
  }
  return rel;
}

bool Raster::row_empty(size_t r) const {
  const auto* p = row(r);
  return std::all_of(p, p + words_, [](std::uint64_t w) { return w == 0; });
}

void Raster::set(const Cell& rel) {
  auto j = static_cast<size_t>(rel[dim_ - 1]);
  row(row_index(rel))[j / 64] |= (std::uint64_t{1} << (j % 64));
}

namespace {

// 64 bits of `src` starting at bit position `pos` (may be negative or past the end).
inline std::uint64_t word_at(const std::uint64_t* src, size_t words, std::int64_t pos) {
  auto fetch = [&](std::int64_t w) -> std::uint64_t {
    return (w < 0 || w >= static_cast<std::int64_t>(words)) ? 0 : src[w];
  };
  std::int64_t w = pos >= 0 ? pos / 64 : -((-pos + 63) / 64);
  int off = static_cast<int>(pos - w * 64);
  if (off == 0) return fetch(w);
  return (fetch(w) >> off) | (fetch(w + 1) << (64 - off));
}

}  // namespace

size_t and_count_shifted(const std::uint64_t* dst, size_t dst_words, const std::uint64_t* src, size_t src_words,
                         std::int64_t shift) {
  size_t n = 0;
  for (size_t w = 0; w < src_words; ++w)
    n += static_cast<size_t>(std::popcount(src[w] & word_at(dst, dst_words, static_cast<std::int64_t>(w * 64) + shift)));
  return n;
}

size_t overlap_count(const Raster& a, const Raster& b, const Cell& shift) {
  const int d = a.dim();
  // Relative offset of B's origin (after shift) in A's frame.
  Cell off{};
  for (int i = 0; i < d; ++i) off[i] = b.origin()[i] + shift[i] - a.origin()[i];
  for (int i = 0; i < d; ++i)
    if (off[i] >= a.extent()[i] || off[i] + b.extent()[i] <= 0) return 0;
  size_t n = 0;
  for (size_t r = 0; r < b.row_count(); ++r) {
    Cell pre = b.row_prefix(r);
    bool inside = true;
    for (int i = 0; i + 1 < d; ++i) {
      pre[i] += off[i];
      if (pre[i] < 0 || pre[i] >= a.extent()[i]) { inside = false; break; }
    }
    if (!inside || b.row_empty(r)) continue;
    n += and_count_shifted(a.row(a.row_index(pre)), a.words_per_row(), b.row(r), b.words_per_row(), off[d - 1]);
  }
  return n;
}

}  // namespace bmlab::detail
