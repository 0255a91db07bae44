#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmlab/cell_set.hpp"
#include "bmlab/polytope.hpp"
#include "bmlab/simplex.hpp"

namespace bmlab {

// ---- measure balancing ----

struct BalanceResult {
  /// Translation v for cone balancing; normal of H for hyperplanes.
  Point witness;
  /// Pencil parameter s in [0, 1] (hyperplanes only).
  Rational parameter = 0;
  /// The balanced side H⁺ (hyperplanes only).
  std::optional<HalfSpace> halfspace;
  /// Largest absolute measure imbalance at the witness.
  Rational residual = 0;
  int iterations = 0;
};

/// Exact |s ∩ cone_i| for every cone of the frame. Sums to volume(s).
std::vector<Rational> cone_measures(const CellSet& s, const ConeFrame& frame);

struct KkmOptions {
  int max_iterations = 200;
  /// Lattice radius (in cells) of the multistart block around the centroid difference.
  int start_radius = 2;
};

/// Finds v with max_i | |A ∩ C_i| - |(B + v) ∩ C_i| | <= tol |A|.
/// Throws ConvergenceError when the iteration cap is hit first.
BalanceResult kkm_cone_translate(const CellSet& a, const CellSet& b, const ConeFrame& frame, const Rational& tol,
                                 const KkmOptions& options = {});

/// Codimension-2 anchor: a point in 2D, a point and a direction in 3D.
struct Anchor {
  Point point;
  Point direction;
};

/// The normal of the pencil through the anchor at parameter s in [0, 1]:
/// (1 - 2s) e1 + 2s(1 - s) e2, which turns e1 into -e1.
Point pencil_normal(const Anchor& anchor, const Rational& s);

/// Bisects the pencil parameter until | |A∩C∩H⁺| - |B∩C∩H⁺| | <= tol |A∩C|.
/// `cone` may be empty (whole space). Requires |A∩C| = |B∩C| exactly.
BalanceResult balanced_hyperplane(const CellSet& a, const CellSet& b, const std::vector<HalfSpace>& cone,
                                  const Anchor& anchor, const Rational& tol, int max_iterations = 200);

// ---- simplex subdivision ----

/// The dim+1 simplices obtained by replacing one vertex at a time by x.
/// Throws InvalidArgument unless x is strictly inside s.
std::vector<Simplex> subdivide_simplex(const Simplex& s, const Point& x);

struct CentralPoint {
  Point x;
  /// Child volume ratios |S_i| / |S|, i.e. the barycentric coordinates of x.
  std::vector<Rational> ratios;
};

/// Scans cells of a inside shrinking copies of s for a point whose children
/// all keep ratio >= 1/(dim+2) and whose vertex distances contract by
/// (dim+1)/(dim+2). Throws InvalidArgument if |s| > (1+alpha)|a ∩ s| or no
/// cell qualifies.
CentralPoint central_point(const CellSet& a, const Simplex& s, const Rational& alpha);

/// Same search without the density gate; empty when nothing qualifies.
std::optional<CentralPoint> find_central_point(const CellSet& a, const Simplex& s);

/// True when x satisfies both subdivision guarantees exactly.
bool central_point_ok(const Simplex& s, const Point& x);

enum class NodeCategory { active, low_density, full, small_radius };

const char* to_string(NodeCategory c);

struct PartitionNode {
  size_t id = 0;
  int depth = 0;
  std::optional<size_t> parent;
  Simplex simplex;
  Rational measure_in_a;
  Rational simplex_volume;
  NodeCategory category = NodeCategory::active;
  std::vector<size_t> children;
  /// The subdivision point of a split node.
  std::optional<CentralPoint> split;
  /// Set when a dense node could not be split.
  std::string failure;
};

struct PartitionTree {
  Rational t;
  Rational eps;
  Rational hull_volume;
  std::vector<PartitionNode> nodes;
  std::vector<size_t> roots;
  /// Σ |S'| over low-density leaves.
  Rational low_density_volume = 0;
  /// Σ |S' \ A| over the remaining leaves.
  Rational dense_gap = 0;

  std::vector<size_t> leaves() const;
};

struct PartitionOptions {
  /// Density at or below this is low. Defaults to eps.
  std::optional<Rational> low_density_threshold;
  /// Nodes with squared diameter below this stop as small_radius.
  std::optional<Rational> min_diameter_sq;
};

PartitionTree linear_partition_process(const CellSet& a, const Weight& t, const Rational& eps, int max_depth,
                                       const PartitionOptions& options = {});

/// Indented plain-text dump, one node per line.
std::string dump_tree(const PartitionTree& tree);
/// node_id,depth,category,vertices,measure,simplex_volume for each leaf.
std::string leaves_csv(const PartitionTree& tree);

// ---- matching and symmetrization ----

struct SubsetMatch {
  CellSet subset;
  /// |A ∩ C| for reference.
  Rational target;
  /// Cells of A and of the subset straddling a cutting hyperplane, times h^dim.
  Rational tau;
};

/// Picks whole cells of b by sequential parallel cuts along the facets of c so
/// that | |B'| - |A ∩ C| | <= tol. Throws InvalidArgument if tol < h^dim.
SubsetMatch subset_match(const CellSet& a, const CellSet& b, const Polytope& c, const Rational& tol);

/// Replaces every slice at fixed `axis` coordinate by the quasi-disc of the
/// same cell count around the axis line. Requires dim >= 2.
CellSet steiner_symmetrize(const CellSet& a, int axis);

}  // namespace bmlab
