#include <algorithm>

#include <gtest/gtest.h>

#include "bmlab/generators.hpp"
#include "bmlab/measure.hpp"
#include "bmlab/minkowski.hpp"
#include "bmlab/oracle.hpp"
#include "bmlab/polytope.hpp"
#include "bmlab/simplex.hpp"
#include "support.hpp"

namespace bmlab {
namespace {

using test::block;
using test::cells;
using test::pt;
using test::q;

const Weight kHalf(q(1, 2));

std::vector<Point> sorted_vertices(const Polytope& p) {
  auto v = p.vertices();
  std::sort(v.begin(), v.end());
  return v;
}

Polytope unit_square() { return Polytope::box(pt({q(0), q(0)}), pt({q(1), q(1)})); }
Polytope standard_triangle() { return Polytope::hull(2, {pt({q(0), q(0)}), pt({q(1), q(0)}), pt({q(0), q(1)})}); }
Polytope pentagon() {
  return Polytope::hull(2, {pt({q(0), q(0)}), pt({q(2), q(0)}), pt({q(2), q(1)}), pt({q(1), q(2)}), pt({q(0), q(2)})});
}

// Oracle agreement first: every kernel quantity against the independent path.

TEST(KernelVsOracle, MinkowskiVolumeOnRandomPairs) {
  for (std::uint64_t i = 0; i < 24; ++i) {
    auto rng = gen::instance_rng(901, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const Weight t(q(1, 2 + static_cast<long>(i % 3)));
    const auto [a, b] = gen::random_equal_pair(rng, dim, 40, q(1, 2));
    const auto kernel = minkowski_volume(a, b, t);
    EXPECT_EQ(kernel, volume(minkowski_combine(a, b, t)));
    EXPECT_EQ(kernel, oracle::sweep_union_volume(oracle::minkowski_direct_boxes(a, b, t))) << "instance " << i;
  }
}

TEST(KernelVsOracle, HullVolumeOnRandomSets) {
  for (std::uint64_t i = 0; i < 24; ++i) {
    auto rng = gen::instance_rng(902, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const auto s = gen::random_blob(rng, GridSpec(dim, q(1, 3)), 30);
    EXPECT_EQ(polytope_volume(convex_hull(s)), oracle::hull_volume(s)) << "instance " << i;
  }
}

TEST(KernelVsOracle, RegionMeasureWithinSubdivisionBracket) {
  for (std::uint64_t i = 0; i < 12; ++i) {
    auto rng = gen::instance_rng(903, i);
    const int dim = 2 + static_cast<int>(i % 2);
    const auto [a, b] = gen::random_equal_pair(rng, dim, 30, q(1));
    const auto exact = region_measure(a, convex_hull(b));
    const auto br = oracle::region_bracket(a, b, 4);
    EXPECT_LE(br.lower, exact) << "instance " << i;
    EXPECT_LE(exact, br.upper) << "instance " << i;
  }
}

// Worked examples.

TEST(Minkowski, SingleCellWithItself) {
  const auto a = cells(2, 1, {{0, 0, 0}});
  const auto m = minkowski_combine(a, a, kHalf);
  EXPECT_EQ(volume(m), 1);
  EXPECT_EQ(canonicalize(m), a);
}

TEST(Minkowski, OneDimensionalGapIsFilled) {
  const auto a = cells(1, 1, {{0, 0, 0}, {2, 0, 0}});
  EXPECT_EQ(minkowski_volume(a, a, kHalf), 3);
  EXPECT_EQ(minkowski_combine(a, a, kHalf), block(1, 1, {0, 0, 0}, {3, 1, 1}).refined(2));
}

TEST(Minkowski, SharpPairAtPitchOneFifth) {
  const auto a = block(2, q(1, 5), {0, 0, 0}, {6, 5, 0}), b = block(2, q(1, 5), {0, 0, 0}, {5, 6, 0});
  EXPECT_EQ(minkowski_volume(a, b, kHalf), q(121, 100));
}

TEST(Minkowski, RejectsGridMismatch) {
  EXPECT_THROW(minkowski_combine(cells(2, 1, {{0, 0, 0}}), cells(2, q(1, 2), {{0, 0, 0}}), kHalf), InvalidArgument);
  EXPECT_THROW(minkowski_combine(cells(1, 1, {{0, 0, 0}}), cells(2, 1, {{0, 0, 0}}), kHalf), InvalidArgument);
}

TEST(ConvexHull, OneCellHasFourCorners) {
  EXPECT_EQ(convex_hull(cells(2, 1, {{0, 0, 0}})).vertices().size(), 4u);
}

TEST(ConvexHull, OneDimensionalHullIsAnInterval) {
  const auto h = convex_hull(cells(1, 1, {{0, 0, 0}, {2, 0, 0}}));
  EXPECT_EQ(sorted_vertices(h), (std::vector<Point>{pt({q(0)}), pt({q(3)})}));
  EXPECT_EQ(polytope_volume(h), 3);
}

TEST(ConvexHull, LShapeIsPentagon) {
  const auto h = convex_hull(test::l_shape());
  EXPECT_EQ(sorted_vertices(h), sorted_vertices(pentagon()));
  EXPECT_EQ(polytope_volume(h), q(7, 2));
}

TEST(ConvexHull, RequiresNonemptySet) { EXPECT_THROW(convex_hull(CellSet(GridSpec(2, 1))), InvalidArgument); }

TEST(PolytopeVolume, Examples) {
  EXPECT_EQ(polytope_volume(standard_triangle()), q(1, 2));
  const auto tet = Polytope::hull(3, {pt({q(0), q(0), q(0)}), pt({q(1), q(0), q(0)}), pt({q(0), q(1), q(0)}),
                                      pt({q(0), q(0), q(1)})});
  EXPECT_EQ(polytope_volume(tet), q(1, 6));
  EXPECT_EQ(polytope_volume(pentagon()), q(7, 2));
}

TEST(PolytopeVolume, DegenerateInputHasZeroVolume) {
  const auto seg = Polytope::hull(2, {pt({q(0), q(0)}), pt({q(1), q(1)}), pt({q(2), q(2)})});
  EXPECT_TRUE(seg.degenerate());
  EXPECT_EQ(polytope_volume(seg), 0);
}

TEST(ClipPolytope, Examples) {
  const auto half = clip_polytope(unit_square(), HalfSpace(pt({q(1), q(0)}), q(1, 2)));
  EXPECT_EQ(polytope_volume(half), q(1, 2));
  EXPECT_EQ(sorted_vertices(half), sorted_vertices(Polytope::box(pt({q(0), q(0)}), pt({q(1, 2), q(1)}))));

  EXPECT_TRUE(clip_polytope(standard_triangle(), HalfSpace(pt({q(1), q(0)}), q(-1))).is_empty());

  const auto diag = clip_polytope(unit_square(), HalfSpace(pt({q(1), q(1)}), q(1)));
  EXPECT_EQ(diag.vertices().size(), 3u);
  EXPECT_EQ(polytope_volume(diag), q(1, 2));
}

TEST(ClipPolytope, TouchingCutLeavesDegenerateFace) {
  const auto face = clip_polytope(unit_square(), HalfSpace(pt({q(1), q(0)}), q(0)));
  EXPECT_TRUE(face.degenerate());
  EXPECT_EQ(polytope_volume(face), 0);
}

TEST(RegionMeasure, Examples) {
  const auto cell = cells(2, 1, {{0, 0, 0}});
  EXPECT_EQ(region_measure(cell, standard_triangle()), q(1, 2));
  const auto s = test::l_shape();
  EXPECT_EQ(region_measure(s, Polytope::box(pt({q(-1), q(-1)}), pt({q(5), q(5)}))), volume(s));
  EXPECT_EQ(region_measure(s, Polytope::box(pt({q(3), q(3)}), pt({q(4), q(4)}))), 0);
}

TEST(RegionMeasure, HalfSpaceForm) {
  const auto s = block(2, q(1, 4), {0, 0, 0}, {4, 4, 0});
  EXPECT_EQ(region_measure(s, std::vector<HalfSpace>{HalfSpace(pt({q(1), q(1)}), q(1))}), q(1, 2));
  EXPECT_EQ(region_measure(s, std::vector<HalfSpace>{}), 1);
}

TEST(SymdiffVolume, Examples) {
  const auto sq = cells(2, 1, {{0, 0, 0}});
  EXPECT_EQ(symdiff_volume(sq, sq, pt({q(0), q(0)})), 0);
  EXPECT_EQ(symdiff_volume(sq, sq, pt({q(1, 2), q(0)})), 1);
  EXPECT_EQ(symdiff_volume(cells(1, 1, {{0, 0, 0}}), cells(1, 1, {{2, 0, 0}}), pt({q(-2)})), 0);
}

TEST(DiameterSq, Examples) {
  EXPECT_EQ(diameter_sq(unit_square()), 2);
  EXPECT_EQ(diameter_sq(Polytope::hull(2, {pt({q(1), q(1)})})), 0);
  EXPECT_EQ(diameter_sq(pentagon()), 8);
}

// Properties.

TEST(KernelProperties, CombineIsMonotone) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = gen::instance_rng(904, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const auto [a, b] = gen::random_equal_pair(rng, dim, 30, q(1));
    const auto bigger = set_union(a, a.translated({1, 0, 0}));
    const Weight t(q(1, 3));
    const auto small = minkowski_combine(a, b, t), large = minkowski_combine(bigger, b, t);
    EXPECT_EQ(intersection_count(small, large), small.size()) << "instance " << i;
  }
}

TEST(KernelProperties, CombineIsTranslationEquivariant) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = gen::instance_rng(905, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const auto [a, b] = gen::random_equal_pair(rng, dim, 30, q(1, 2));
    const Weight t(q(2, 5));
    Cell z{3, -1, 2}, fine{};
    for (int k = 0; k < dim; ++k) fine[k] = t.num() * z[k];
    for (int k = dim; k < kMaxExactDim; ++k) z[k] = 0;
    EXPECT_EQ(minkowski_combine(a.translated(z), b, t), minkowski_combine(a, b, t).translated(fine)) << "instance " << i;
  }
}

TEST(KernelProperties, CombineOfConvexRegionWithItselfIsTheRegion) {
  const auto box = block(3, q(1, 2), {-1, 0, 2}, {3, 2, 4});
  for (long den : {2, 3, 5}) {
    const Weight t(q(1, den));
    EXPECT_EQ(minkowski_combine(box, box, t), box.refined(t.den()));
  }
  const auto l = test::l_shape();
  EXPECT_GT(minkowski_volume(l, l, kHalf), volume(l));
}

TEST(KernelProperties, SetInsideItsHull) {
  for (std::uint64_t i = 0; i < 12; ++i) {
    auto rng = gen::instance_rng(906, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const auto s = gen::random_blob(rng, GridSpec(dim, q(1, 3)), 40);
    const Polytope hull = convex_hull(s);
    EXPECT_EQ(region_measure(s, hull), volume(s)) << "instance " << i;
  }
}

TEST(KernelProperties, FanTriangulationSumsToVolume) {
  for (std::uint64_t i = 0; i < 12; ++i) {
    auto rng = gen::instance_rng(907, i);
    const int dim = 2 + static_cast<int>(i % 2);
    const auto hull = convex_hull(gen::random_blob(rng, GridSpec(dim, 1), 25));
    Rational sum = 0;
    for (const auto& s : triangulate(hull)) sum += s.volume();
    EXPECT_EQ(sum, polytope_volume(hull)) << "instance " << i;
  }
}

TEST(KernelProperties, SymdiffZeroExactlyForEqualSets) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = gen::instance_rng(908, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const auto [a, b] = gen::random_equal_pair(rng, dim, 30, q(1));
    const Point zero = zero_point(dim);
    EXPECT_EQ(symdiff_volume(a, a, zero), 0);
    EXPECT_EQ(symdiff_volume(a, b, zero),
              volume(a) + volume(b) - 2 * Rational(static_cast<long>(intersection_count(a, b))));
    EXPECT_EQ(symdiff_volume(a, b, zero) == 0, a == b);
  }
}

}  // namespace
}  // namespace bmlab
