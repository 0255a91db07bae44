#include <gtest/gtest.h>

#include "bmlab/deficits.hpp"
#include "bmlab/generators.hpp"
#include "bmlab/measure.hpp"
#include "bmlab/minkowski.hpp"
#include "bmlab/oracle.hpp"
#include "support.hpp"

namespace bmlab {
namespace {

using test::block;
using test::cells;
using test::pt;
using test::q;

const Weight kHalf(q(1, 2));

CellSet gap_pair() { return cells(1, 1, {{0, 0, 0}, {2, 0, 0}}); }

// Oracle first: δ from the sweep of the direct boxes.

TEST(DeltaVsOracle, MatchesSweepOnRandomPairs) {
  for (std::uint64_t i = 0; i < 15; ++i) {
    auto rng = gen::instance_rng(911, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const auto [a, b] = gen::random_equal_pair(rng, dim, 30, q(1, 2));
    const Weight t(q(1, 2 + static_cast<long>(i % 3)));
    const Rational expected = oracle::sweep_union_volume(oracle::minkowski_direct_boxes(a, b, t)) / volume(a) - 1;
    EXPECT_EQ(delta_t(a, b, t), expected) << "instance " << i;
    EXPECT_GE(expected, 0);
  }
}

TEST(DeltaT, Examples) {
  const auto sq = block(2, q(1, 4), {0, 0, 0}, {4, 4, 0});
  EXPECT_EQ(delta_t(sq, sq, kHalf), 0);
  EXPECT_EQ(delta_t(gap_pair(), gap_pair(), kHalf), q(1, 2));
  const auto [a, b] = gen::sharp_pair(q(1, 5));
  EXPECT_EQ(delta_t(a, b, kHalf), q(1, 120));
}

TEST(DeltaT, RequiresEqualPositiveVolumes) {
  EXPECT_THROW(delta_t(gap_pair(), cells(1, 1, {{0, 0, 0}}), kHalf), InvalidArgument);
  const CellSet empty(GridSpec(1, 1));
  EXPECT_THROW(delta_t(empty, empty, kHalf), InvalidArgument);
}

TEST(DeltaT, NonnegativeOnRandomPairs) {
  for (std::uint64_t i = 0; i < 30; ++i) {
    auto rng = gen::instance_rng(912, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const auto [a, b] = gen::random_equal_pair(rng, dim, 60, q(1, 3));
    EXPECT_GE(delta_t(a, b, Weight(q(1, 2 + static_cast<long>(i % 4)))), 0) << "instance " << i;
  }
}

TEST(DeltaT, PositiveForNonconvexSelfPair) {
  const auto l = test::l_shape().refined(4);
  EXPECT_GT(hull_gap(l), 0);
  EXPECT_GT(delta_t(l, l, kHalf), 0);
}

TEST(HullGap, Examples) {
  EXPECT_EQ(hull_gap(block(3, q(1, 2), {0, 0, 0}, {2, 3, 1})), 0);
  EXPECT_EQ(hull_gap(gap_pair()), 1);
  EXPECT_EQ(hull_gap(test::l_shape()), q(1, 2));
  EXPECT_THROW(hull_gap(CellSet(GridSpec(2, 1))), InvalidArgument);
}

TEST(CommonHullRatio, Examples) {
  const auto x = block(2, q(1, 2), {0, 0, 0}, {2, 2, 0});
  const auto same = common_hull_ratio(x, x);
  EXPECT_EQ(same.lhs, 0);
  EXPECT_EQ(same.rhs, 0);

  const auto shifted = common_hull_ratio(x, block(2, q(1, 2), {1, 0, 0}, {2, 2, 0}));
  EXPECT_EQ(shifted.lhs, q(1, 2));
  EXPECT_EQ(shifted.rhs, 2);

  const auto nested = common_hull_ratio(x, block(2, q(1, 2), {0, 0, 0}, {2, 1, 0}));
  EXPECT_EQ(nested.lhs, 1);
  EXPECT_EQ(nested.rhs, 1);

  EXPECT_THROW(common_hull_ratio(x, block(2, q(1, 2), {5, 5, 0}, {1, 1, 0})), InvalidArgument);
}

TEST(OptimalTranslation, FindsExactLatticeTranslate) {
  auto rng = gen::instance_rng(913, 0);
  const auto a = gen::random_blob(rng, GridSpec(2, q(1, 3)), 20);
  const auto r = optimal_translation_symdiff(a, a.translated({2, -1, 0}));
  EXPECT_EQ(r.symdiff, 0);
  EXPECT_EQ(r.shift, pt({q(-2, 3), q(1, 3)}));
}

TEST(OptimalTranslation, OneDimensionalHalfCellShift) {
  const auto r = optimal_translation_symdiff(cells(1, q(1, 2), {{0, 0, 0}, {1, 0, 0}}),
                                             cells(1, q(1, 2), {{1, 0, 0}, {2, 0, 0}}));
  EXPECT_EQ(r.symdiff, 0);
  EXPECT_EQ(r.shift, pt({q(-1, 2)}));
}

TEST(OptimalTranslation, SharpPairOptimumAtZero) {
  const auto [a, b] = gen::sharp_pair(q(1, 5));
  const auto r = optimal_translation_symdiff(a, b);
  EXPECT_EQ(r.symdiff, q(2, 5));
  EXPECT_EQ(r.shift, pt({q(0), q(0)}));
  EXPECT_EQ(symdiff_volume(a, b, r.shift), r.symdiff);
}

TEST(OptimalTranslation, InvariantUnderCommonTranslation) {
  for (std::uint64_t i = 0; i < 6; ++i) {
    auto rng = gen::instance_rng(914, i);
    const int dim = 1 + static_cast<int>(i % 2);
    const auto [a, b] = gen::random_equal_pair(rng, dim, 20, q(1));
    const Cell z{4, -3, 0};
    EXPECT_EQ(optimal_translation_symdiff(a, b).symdiff,
              optimal_translation_symdiff(a.translated(z), b.translated(z)).symdiff)
        << "instance " << i;
  }
}

TEST(Freiman1d, Examples) {
  const auto unit = cells(1, 1, {{0, 0, 0}});
  const auto id = freiman_check_1d(unit, unit, kHalf);
  EXPECT_EQ(id.delta, 0);
  EXPECT_EQ(id.gap_a, 0);
  EXPECT_TRUE(id.applicable);
  EXPECT_TRUE(id.holds());

  const auto edge = freiman_check_1d(gap_pair(), gap_pair(), kHalf);
  EXPECT_EQ(edge.delta, q(1, 2));
  EXPECT_FALSE(edge.applicable);

  std::vector<Cell> cs;
  for (std::int64_t i = 0; i < 17; ++i)
    if (i != 8) cs.push_back({i, 0, 0});
  const auto a = cells(1, q(1, 8), cs);
  const auto r = freiman_check_1d(a, a, kHalf);
  EXPECT_EQ(r.gap_a, q(1, 8));
  EXPECT_EQ(r.delta, q(1, 16));
  EXPECT_TRUE(r.applicable);
  EXPECT_TRUE(r.holds());
  EXPECT_LE(r.gap_a, 2 * r.delta * volume(a));
}

TEST(Freiman1d, RejectsHigherDimensions) {
  const auto sq = cells(2, 1, {{0, 0, 0}});
  EXPECT_THROW(freiman_check_1d(sq, sq, kHalf), InvalidArgument);
}

TEST(BoxHull, Examples) {
  const Box r{pt({q(0), q(0)}), pt({q(1), q(1)})};
  const auto same = box_hull_bound_check(r, r);
  EXPECT_EQ(same.lhs, 1);
  EXPECT_EQ(same.rhs, 4);
  EXPECT_TRUE(same.holds);

  const auto flat = box_hull_bound_check(r, Box{pt({q(0), q(0)}), pt({q(2), q(1, 2)})});
  EXPECT_EQ(flat.lhs, q(7, 4));
  EXPECT_EQ(flat.rhs, 8);
  EXPECT_TRUE(flat.holds);

  const auto line = box_hull_bound_check(Box{pt({q(0)}), pt({q(1)})}, Box{pt({q(1, 2)}), pt({q(5, 2)})});
  EXPECT_EQ(line.lhs, q(5, 2));
  EXPECT_EQ(line.rhs, 8);
  EXPECT_TRUE(line.holds);

  EXPECT_THROW(box_hull_bound_check(r, Box{pt({q(1), q(0)}), pt({q(2), q(1)})}), InvalidArgument);
}

TEST(BoxHull, HoldsOnRandomBoxes) {
  for (std::uint64_t i = 0; i < 60; ++i) {
    auto rng = gen::instance_rng(915, i);
    const auto [r, t] = gen::random_box_pair(rng, 1 + static_cast<int>(i % 3));
    EXPECT_TRUE(box_hull_bound_check(r, t).holds) << "instance " << i;
  }
}

TEST(LambdaBoundedness, CenteredBoxIsBounded) {
  const auto box = block(2, q(1, 4), {-8, -8, 0}, {16, 16, 0});
  const auto r = lambda_boundedness(box, box, pt({q(0), q(0)}));
  EXPECT_GT(r.r_inner, 0);
  EXPECT_GE(r.r_outer, r.r_inner);
  EXPECT_EQ(r.lambda, r.r_outer / r.r_inner);
  EXPECT_THROW(lambda_boundedness(box, box, pt({q(10), q(10)})), InvalidArgument);
}

TEST(DeficitReport, SharpRowSerializesExactly) {
  const auto [a, b] = gen::sharp_pair(q(1, 5));
  const auto r = deficit_report(a, b, kHalf, "sharp");
  ASSERT_TRUE(r.delta_t.has_value());
  EXPECT_EQ(*r.delta_t, q(1, 120));
  EXPECT_EQ(*r.symdiff_opt, q(2, 5));
  EXPECT_EQ(*r.hull_gap_a, 0);
  const std::string row = deficit_csv_row(r);
  EXPECT_NE(row.find(",1/120,"), std::string::npos) << row;
  EXPECT_EQ(deficit_csv_header().rfind("scenario_id,dim,t_num,t_den,pitch_num,pitch_den,vol_a,vol_b,delta_t", 0), 0u);
}

TEST(DeficitReport, UnequalVolumesLeaveDeltaEmpty) {
  const auto r = deficit_report(gap_pair(), cells(1, 1, {{0, 0, 0}}), kHalf);
  EXPECT_FALSE(r.delta_t.has_value());
  EXPECT_TRUE(r.hull_gap_a.has_value());
  EXPECT_EQ(*r.hull_gap_a, 1);
}

}  // namespace
}  // namespace bmlab
