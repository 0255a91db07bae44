#pragma once

#include <string>
#include <vector>

#include "bmlab/box.hpp"
#include "bmlab/cell_set.hpp"

// Second computation path for the kernel's exact quantities. Nothing here
// uses the kernel's rasters, hulls or clipping.

namespace bmlab::oracle {

/// Exact volume of a union of boxes by recursive coordinate sweep.
Rational sweep_union_volume(const BoxList& boxes);

inline constexpr size_t kDefaultPairCap = 1'000'000;

/// The |a|·|b| boxes h(tα + (1-t)β) + [0, h]^dim. Throws InvalidArgument above the pair cap.
BoxList minkowski_direct_boxes(const CellSet& a, const CellSet& b, const Weight& t, size_t pair_cap = kDefaultPairCap);

/// Volume of the convex hull of all cell corners, by gift wrapping.
Rational hull_volume(const CellSet& s);

/// Bounds on |a ∩ co(p)| from a k^dim subdivision of every cell of a.
struct Bracket {
  Rational lower;
  Rational upper;
};
Bracket region_bracket(const CellSet& a, const CellSet& p, int subdivisions = 8);

/// Values the kernel claims for one instance.
struct KernelValues {
  Rational minkowski_volume;
  Rational hull_a;
  Rational hull_b;
  Rational region;  ///< |A ∩ co(B)|
};

KernelValues kernel_values(const CellSet& a, const CellSet& b, const Weight& t);

struct CrosscheckRow {
  std::string instance_id;
  std::string quantity;
  std::string kernel_value;
  std::string oracle_value;
  bool equal = false;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;
  bool pass() const;
};

CrosscheckReport crosscheck_instance(const CellSet& a, const CellSet& b, const Weight& t,
                                     const std::string& instance_id = "0", size_t pair_cap = kDefaultPairCap);

/// Checks supplied kernel values against the oracle (negative controls).
CrosscheckReport crosscheck_instance(const CellSet& a, const CellSet& b, const Weight& t, const KernelValues& kernel,
                                     const std::string& instance_id = "0", size_t pair_cap = kDefaultPairCap);

std::string crosscheck_csv_header();
std::string crosscheck_csv_rows(const CrosscheckReport& report);

}  // namespace bmlab::oracle
