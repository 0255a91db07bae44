#pragma once

// Dense bit raster of a cell set: one bitset row per prefix coordinate tuple,
// bits running along the last axis. Internal to the kernel.

#include <cstdint>
#include <vector>

#include "bmlab/cell_set.hpp"

namespace bmlab::detail {

class Raster {
 public:
  Raster(int dim, Cell origin, Cell extent);
  static Raster from_cells(const CellSet& s);

  int dim() const { return dim_; }
  const Cell& origin() const { return origin_; }
  const Cell& extent() const { return extent_; }
  std::int64_t row_length() const { return extent_[dim_ - 1]; }
  size_t words_per_row() const { return words_; }
  size_t row_count() const { return rows_; }

  /// Row index of relative prefix coordinates (only the first dim-1 entries are read).
  size_t row_index(const Cell& rel) const;
  Cell row_prefix(size_t row) const;

  std::uint64_t* row(size_t r) { return bits_.data() + r * words_; }
  const std::uint64_t* row(size_t r) const { return bits_.data() + r * words_; }
  bool row_empty(size_t r) const;

  void set(const Cell& rel);

 private:
  int dim_;
  Cell origin_;
  Cell extent_;
  size_t words_;
  size_t rows_;
  std::vector<std::uint64_t> bits_;
};

/// Number of j with src bit j and dst bit (j + shift) both set.
size_t and_count_shifted(const std::uint64_t* dst, size_t dst_words, const std::uint64_t* src, size_t src_words,
                         std::int64_t shift);

/// Number of B cells b with b + shift in A, over all rows.
size_t overlap_count(const Raster& a, const Raster& b, const Cell& shift);

}  // namespace bmlab::detail
