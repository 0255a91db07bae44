#include <map>

#include <gtest/gtest.h>

#include "bmlab/deficits.hpp"
#include "bmlab/generators.hpp"
#include "bmlab/measure.hpp"
#include "bmlab/partition.hpp"
#include "support.hpp"

namespace bmlab {
namespace {

using test::block;
using test::cells;
using test::pt;
using test::q;

Simplex standard_triangle() { return Simplex({pt({q(0), q(0)}), pt({q(1), q(0)}), pt({q(0), q(1)})}); }

ConeFrame frame_at(const Point& apex) {
  std::vector<Point> vs;
  for (const auto& v : centered_simplex(static_cast<int>(apex.size()))) vs.push_back(apex + v);
  return ConeFrame(apex, Simplex(vs));
}

/// Cells of pitch 1/n lying inside the standard triangle.
CellSet rasterized_triangle(std::int64_t n) {
  std::vector<Cell> cs;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; i + j + 1 < n; ++j) cs.push_back({i, j, 0});
  return cells(2, q(1, n), cs);
}

Rational sum(const std::vector<Rational>& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

TEST(ConeMeasures, SymmetricIntervalSplitsEvenly) {
  const auto s = block(1, q(1, 2), {-2, 0, 0}, {4, 1, 1});
  const ConeFrame frame(pt({q(0)}), Simplex({pt({q(-1)}), pt({q(1)})}));
  const auto m = cone_measures(s, frame);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], 1);
  EXPECT_EQ(m[1], 1);
}

TEST(ConeMeasures, SetInsideOneCone) {
  const auto s = block(2, q(1, 4), {8, 8, 0}, {2, 2, 0});
  const auto m = cone_measures(s, frame_at(pt({q(0), q(0)})));
  const size_t home = frame_at(pt({q(0), q(0)})).locate(pt({q(9, 4), q(9, 4)}));
  for (size_t i = 0; i < m.size(); ++i) EXPECT_EQ(m[i], i == home ? volume(s) : Rational(0));
}

TEST(ConeMeasures, ExactPartsSumToVolumeOnAnyLattice) {
  const auto s = block(2, q(1, 4), {0, 0, 0}, {4, 4, 0});
  const ConeFrame frame(pt({q(1, 2), q(1, 2)}), Simplex({pt({q(0), q(0)}), pt({q(2), q(0)}), pt({q(0), q(2)})}));
  const auto m = cone_measures(s, frame);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(sum(m), 1);
  EXPECT_EQ(cone_measures(s.refined(3), frame), m);
  for (const auto& x : m) EXPECT_GT(x, 0);
}

TEST(Kkm, IdenticalSetsNeedNoShift) {
  auto rng = gen::instance_rng(921, 0);
  const auto a = gen::random_blob(rng, GridSpec(2, q(1, 4)), 30);
  const auto r = kkm_cone_translate(a, a, frame_at(pt({q(1, 8), q(1, 8)})), q(1, 1000));
  EXPECT_EQ(r.witness, pt({q(0), q(0)}));
  EXPECT_EQ(r.residual, 0);
}

TEST(Kkm, OneDimensionalRays) {
  const auto a = block(1, 1, {0, 0, 0}, {2, 1, 1}), b = block(1, 1, {1, 0, 0}, {2, 1, 1});
  const ConeFrame frame(pt({q(0)}), Simplex({pt({q(-1)}), pt({q(1)})}));
  const auto r = kkm_cone_translate(a, b, frame, q(1, 1000));
  EXPECT_EQ(r.residual, 0);
  EXPECT_EQ(r.witness, pt({q(-1)}));
}

TEST(Kkm, RecoversLatticeShiftAgainstScan) {
  const GridSpec grid(2, q(1, 8));
  const auto a = gen::ellipse_cells(grid, {0.1, 0.05, 0}, {0.9, 0.6, 0});
  const auto b = a.translated({3, 2, 0});
  const auto frame = frame_at(pt({q(1, 16), q(1, 32)}));
  const Rational tol = q(1, 1'000'000);
  const auto r = kkm_cone_translate(a, b, frame, tol);
  EXPECT_LE(r.residual, tol * volume(a));

  // Independent residual: measure B + v in the frame moved by -v.
  const auto ma = cone_measures(a, frame), mb = cone_measures(b, frame.translated(Rational(-1) * r.witness));
  Rational worst = 0;
  for (size_t i = 0; i < ma.size(); ++i) worst = std::max(worst, Rational(abs(ma[i] - mb[i])));
  EXPECT_EQ(worst, r.residual);

  // Scan oracle: the exact lattice translate is a zero.
  EXPECT_EQ(cone_measures(b.translated({-3, -2, 0}), frame), ma);
}

TEST(Kkm, RejectsUnequalVolumesAndBadTolerance) {
  const auto a = block(2, 1, {0, 0, 0}, {2, 2, 0});
  const auto frame = frame_at(pt({q(1), q(1)}));
  EXPECT_THROW(kkm_cone_translate(a, block(2, 1, {0, 0, 0}, {1, 2, 0}), frame, q(1, 10)), InvalidArgument);
  EXPECT_THROW(kkm_cone_translate(a, a, frame, q(0)), InvalidArgument);
}

TEST(BalancedHyperplane, IdenticalSetsBalanceAtStart) {
  const auto a = block(2, q(1, 2), {-2, -2, 0}, {3, 4, 0});
  const auto r = balanced_hyperplane(a, a, {}, Anchor{pt({q(0), q(0)}), {}}, q(1, 1000));
  EXPECT_EQ(r.parameter, 0);
  EXPECT_EQ(r.residual, 0);
}

TEST(BalancedHyperplane, VerticalLineSplitsStackedBoxes) {
  const auto a = block(2, q(1, 2), {-2, 0, 0}, {4, 2, 0}), b = block(2, q(1, 2), {-2, -2, 0}, {4, 2, 0});
  const auto r = balanced_hyperplane(a, b, {}, Anchor{pt({q(0), q(0)}), {}}, q(1, 1000));
  EXPECT_EQ(r.residual, 0);
  ASSERT_TRUE(r.halfspace.has_value());
  const std::vector<HalfSpace> side{*r.halfspace};
  EXPECT_EQ(region_measure(a, side), 1);
  EXPECT_EQ(region_measure(b, side), 1);
}

TEST(BalancedHyperplane, MirrorPairBalancesAcrossTheMirror) {
  const auto a = cells(2, 1, {{-2, 0, 0}, {-1, 0, 0}});
  const auto b = reflected(a, 0);
  EXPECT_EQ(b, cells(2, 1, {{0, 0, 0}, {1, 0, 0}}));
  const auto r = balanced_hyperplane(a, b, {}, Anchor{pt({q(0), q(1, 2)}), {}}, q(1, 1000));
  EXPECT_EQ(r.residual, 0);
  EXPECT_EQ(r.parameter, q(1, 2));
  EXPECT_EQ(r.witness[0], 0);
}

TEST(BalancedHyperplane, ThreeDimensionalAnchorNeedsDirection) {
  const auto a = block(3, 1, {-1, -1, -1}, {2, 2, 2});
  EXPECT_THROW(balanced_hyperplane(a, a, {}, Anchor{pt({q(0), q(0), q(0)}), {}}, q(1, 100)), InvalidArgument);
  const auto r = balanced_hyperplane(a, a, {}, Anchor{pt({q(0), q(0), q(0)}), pt({q(0), q(0), q(1)})}, q(1, 100));
  EXPECT_EQ(r.residual, 0);
}

TEST(SubdivideSimplex, Examples) {
  const auto tri = standard_triangle();
  for (const auto& c : subdivide_simplex(tri, tri.barycenter())) EXPECT_EQ(c.volume(), q(1, 6));

  const auto kids = subdivide_simplex(tri, pt({q(1, 2), q(1, 4)}));
  ASSERT_EQ(kids.size(), 3u);
  EXPECT_EQ(kids[0].volume(), q(1, 8));
  EXPECT_EQ(kids[1].volume(), q(1, 4));
  EXPECT_EQ(kids[2].volume(), q(1, 8));

  const Simplex tet({pt({q(0), q(0), q(0)}), pt({q(1), q(0), q(0)}), pt({q(0), q(1), q(0)}), pt({q(0), q(0), q(1)})});
  Rational total = 0;
  for (const auto& c : subdivide_simplex(tet, tet.barycenter())) {
    EXPECT_EQ(c.volume(), q(1, 24));
    total += c.volume();
  }
  EXPECT_EQ(total, tet.volume());

  EXPECT_THROW(subdivide_simplex(tri, pt({q(1, 2), q(0)})), InvalidArgument);
}

TEST(CentralPoint, DenseTriangleTakesBarycenter) {
  const auto tri = standard_triangle();
  const auto c = central_point(rasterized_triangle(16), tri, q(1, 5));
  EXPECT_EQ(c.x, tri.barycenter());
  for (const auto& r : c.ratios) EXPECT_EQ(r, q(1, 3));
  EXPECT_TRUE(central_point_ok(tri, c.x));
}

TEST(CentralPoint, MissingCornerCellStaysCentral) {
  const auto tri = standard_triangle();
  const auto a = set_difference(rasterized_triangle(64), cells(2, q(1, 64), {{0, 0, 0}}));
  const auto c = central_point(a, tri, q(1, 10));
  EXPECT_TRUE(central_point_ok(tri, c.x));
  for (const auto& r : c.ratios) EXPECT_GE(r, q(1, 4));
  EXPECT_LT(dist_sq(c.x, tri.barycenter()), q(1, 100));
}

TEST(CentralPoint, SparseSetFailsDensityGate) {
  const auto a = cells(2, q(1, 16), {{4, 4, 0}});
  EXPECT_THROW(central_point(a, standard_triangle(), q(1, 10)), InvalidArgument);
}

TEST(Partition, FullBoxHasOnlyFullLeaves) {
  const auto a = block(2, q(1, 4), {0, 0, 0}, {4, 4, 0});
  const auto tree = linear_partition_process(a, Weight(q(1, 2)), q(1, 4), 3);
  Rational leaf_volume = 0;
  for (size_t id : tree.leaves()) {
    EXPECT_EQ(tree.nodes[id].category, NodeCategory::full);
    leaf_volume += tree.nodes[id].simplex_volume;
  }
  EXPECT_EQ(leaf_volume, 1);
  EXPECT_EQ(tree.hull_volume, 1);
  EXPECT_EQ(tree.dense_gap, 0);
}

TEST(Partition, NotchedTriangleConservesVolume) {
  auto a = rasterized_triangle(16);
  a = set_difference(a, block(2, q(1, 16), {0, 0, 0}, {6, 6, 0}));
  a = set_union(a, cells(2, q(1, 16), {{0, 0, 0}}));
  const auto tree = linear_partition_process(a, Weight(q(1, 2)), q(1, 4), 4);
  Rational leaf_volume = 0;
  size_t low = 0;
  for (size_t id : tree.leaves()) {
    leaf_volume += tree.nodes[id].simplex_volume;
    if (tree.nodes[id].category == NodeCategory::low_density) ++low;
  }
  EXPECT_EQ(leaf_volume, tree.hull_volume);
  EXPECT_EQ(tree.hull_volume, polytope_volume(convex_hull(a)));
  EXPECT_GE(low, 1u);
  for (const auto& n : tree.nodes)
    if (n.split) EXPECT_TRUE(central_point_ok(n.simplex, n.split->x));
}

TEST(Partition, DepthZeroKeepsRoots) {
  const auto a = test::l_shape().refined(4);
  const auto tree = linear_partition_process(a, Weight(q(1, 2)), q(1, 4), 0);
  EXPECT_EQ(tree.leaves().size(), tree.roots.size());
  for (const auto& n : tree.nodes) EXPECT_TRUE(n.children.empty());
  EXPECT_NE(dump_tree(tree).find("#0"), std::string::npos);
  EXPECT_EQ(leaves_csv(tree).rfind("node_id,depth,category,vertices,measure,simplex_volume\n", 0), 0u);
}

TEST(SubsetMatch, ContainedSetKeepsEverything) {
  const auto a = block(2, q(1, 4), {0, 0, 0}, {4, 4, 0}), b = block(2, q(1, 4), {2, 2, 0}, {4, 4, 0});
  const auto m = subset_match(a, b, Polytope::box(pt({q(-1), q(-1)}), pt({q(2), q(2)})), q(1, 16));
  EXPECT_EQ(m.subset, b);
  EXPECT_EQ(m.target, 1);
}

TEST(SubsetMatch, OneDimensionalHalf) {
  const auto a = block(1, q(1, 2), {0, 0, 0}, {4, 1, 1});
  const auto m = subset_match(a, a, Polytope::box(pt({q(0)}), pt({q(1)})), q(1, 2));
  EXPECT_EQ(m.subset, block(1, q(1, 2), {0, 0, 0}, {2, 1, 1}));
  EXPECT_EQ(m.target, 1);
}

TEST(SubsetMatch, HalfPlaneWithinOneCell) {
  const auto a = block(2, q(1, 4), {0, 0, 0}, {4, 4, 0}), b = a.translated({3, 1, 0});
  const auto c = Polytope::box(pt({q(-5), q(-5)}), pt({q(5, 8), q(5)}));
  const auto m = subset_match(a, b, c, q(1, 16));
  EXPECT_EQ(m.target, q(5, 8));
  EXPECT_LE(abs(volume(m.subset) - m.target), q(1, 16));
  EXPECT_EQ(intersection_count(m.subset, b), m.subset.size());
  EXPECT_THROW(subset_match(a, b, c, q(1, 32)), InvalidArgument);
}

TEST(Steiner, CenteredSquareUnchanged) {
  const auto sq = block(2, 1, {-2, -2, 0}, {4, 4, 0});
  EXPECT_EQ(steiner_symmetrize(sq, 0), sq);
  EXPECT_EQ(steiner_symmetrize(sq, 1), sq);
}

TEST(Steiner, LShapeColumnsRecentered) {
  const auto s = steiner_symmetrize(test::l_shape(), 0);
  EXPECT_EQ(s, cells(2, 1, {{0, -1, 0}, {0, 0, 0}, {1, -1, 0}}));
}

TEST(Steiner, PreservesSliceCountsAndVolume) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = gen::instance_rng(922, i);
    const int dim = 2 + static_cast<int>(i % 2);
    const auto a = gen::random_blob(rng, GridSpec(dim, q(1, 4)), 60);
    const int axis = static_cast<int>(i % dim);
    const auto s = steiner_symmetrize(a, axis);
    EXPECT_EQ(volume(s), volume(a));
    std::map<std::int64_t, int> before, after;
    for (const auto& c : a.cells()) ++before[c[axis]];
    for (const auto& c : s.cells()) ++after[c[axis]];
    EXPECT_EQ(before, after) << "instance " << i;
  }
  EXPECT_THROW(steiner_symmetrize(block(1, 1, {0, 0, 0}, {3, 1, 1}), 0), InvalidArgument);
}

}  // namespace
}  // namespace bmlab
