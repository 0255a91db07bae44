#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "bmlab/generators.hpp"
#include "bmlab/minkowski.hpp"
#include "bmlab/oracle.hpp"
#include "support.hpp"

namespace bmlab {
namespace {

using test::cells;
using test::pt;
using test::q;

const Weight kHalf(q(1, 2));

Box box2(Rational x0, Rational y0, Rational x1, Rational y1) { return Box{pt({x0, y0}), pt({x1, y1})}; }

BoxList random_boxes(std::mt19937_64& rng, int dim, int n) {
  BoxList out;
  for (int i = 0; i < n; ++i) {
    Box b;
    for (int k = 0; k < dim; ++k) {
      const auto lo = gen::uniform(rng, -8, 8);
      b.lo.push_back(q(lo, 4));
      b.hi.push_back(q(lo + gen::uniform(rng, 1, 6), 4));
    }
    out.push_back(b);
  }
  return out;
}

TEST(SweepUnion, Examples) {
  EXPECT_EQ(oracle::sweep_union_volume({box2(0, 0, 1, 1), box2(2, 0, 3, 1)}), 2);
  EXPECT_EQ(oracle::sweep_union_volume({box2(0, 0, 1, 1), box2(q(1, 2), 0, q(3, 2), 1)}), q(3, 2));
  EXPECT_EQ(oracle::sweep_union_volume({}), 0);
}

TEST(SweepUnion, DegenerateBoxesAddNothing) {
  EXPECT_EQ(oracle::sweep_union_volume({box2(0, 0, 1, 1), box2(0, 0, 0, 5)}), 1);
}

TEST(SweepUnion, PermutationInvariant) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = gen::instance_rng(931, i);
    const int dim = 1 + static_cast<int>(i % 3);
    auto boxes = random_boxes(rng, dim, 12);
    const auto v = oracle::sweep_union_volume(boxes);
    std::shuffle(boxes.begin(), boxes.end(), rng);
    EXPECT_EQ(oracle::sweep_union_volume(boxes), v) << "instance " << i;
    std::reverse(boxes.begin(), boxes.end());
    EXPECT_EQ(oracle::sweep_union_volume(boxes), v) << "instance " << i;
  }
}

TEST(SweepUnion, MonotoneUnderAddingBoxes) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto rng = gen::instance_rng(932, i);
    const int dim = 1 + static_cast<int>(i % 3);
    const auto boxes = random_boxes(rng, dim, 10);
    Rational prev = 0;
    BoxList growing;
    for (const auto& b : boxes) {
      growing.push_back(b);
      const auto v = oracle::sweep_union_volume(growing);
      EXPECT_GE(v, prev);
      EXPECT_GE(v, b.volume());
      prev = v;
    }
  }
}

TEST(DirectBoxes, SingleCells) {
  const auto a = cells(2, 1, {{1, 0, 0}}), b = cells(2, 1, {{0, 2, 0}});
  const auto boxes = oracle::minkowski_direct_boxes(a, b, kHalf);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_EQ(boxes[0].lo, pt({q(1, 2), q(1)}));
  EXPECT_EQ(boxes[0].hi, pt({q(3, 2), q(2)}));
}

TEST(DirectBoxes, OneDimensionalGapPair) {
  const auto a = cells(1, 1, {{0, 0, 0}, {2, 0, 0}});
  auto boxes = oracle::minkowski_direct_boxes(a, a, kHalf);
  std::sort(boxes.begin(), boxes.end(), [](const Box& x, const Box& y) { return x.lo < y.lo; });
  ASSERT_EQ(boxes.size(), 4u);
  const Rational lo[] = {0, 1, 1, 2};
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(boxes[i].lo, pt({lo[i]}));
    EXPECT_EQ(boxes[i].hi, pt({lo[i] + 1}));
  }
  EXPECT_EQ(oracle::sweep_union_volume(boxes), volume(minkowski_combine(a, a, kHalf)));
}

TEST(DirectBoxes, PairCapIsEnforced) {
  const auto a = test::block(1, 1, {0, 0, 0}, {10, 1, 1});
  EXPECT_THROW(oracle::minkowski_direct_boxes(a, a, kHalf, 99), InvalidArgument);
  EXPECT_EQ(oracle::minkowski_direct_boxes(a, a, kHalf, 100).size(), 100u);
}

TEST(HullOracle, Examples) {
  EXPECT_EQ(oracle::hull_volume(test::l_shape()), q(7, 2));
  EXPECT_EQ(oracle::hull_volume(cells(1, 1, {{0, 0, 0}, {2, 0, 0}})), 3);
  EXPECT_EQ(oracle::hull_volume(cells(3, q(1, 2), {{0, 0, 0}, {1, 1, 1}})), q(1, 2));
}

TEST(RegionBracket, ContainsExactValue) {
  const auto a = test::block(2, 1, {0, 0, 0}, {2, 2, 0});
  const auto p = cells(2, 1, {{0, 0, 0}});
  const auto br = oracle::region_bracket(a, p, 8);
  EXPECT_EQ(br.lower, 1);
  EXPECT_GE(br.upper, 1);
  const auto l = oracle::region_bracket(a, test::l_shape(), 4);
  EXPECT_LE(l.lower, q(7, 2));
  EXPECT_GE(l.upper, q(7, 2));
}

TEST(Crosscheck, AgreeingInstancePasses) {
  auto rng = gen::instance_rng(933, 0);
  const auto [a, b] = gen::random_equal_pair(rng, 2, 40, q(1, 3));
  const auto rep = oracle::crosscheck_instance(a, b, Weight(q(1, 3)), "seeded");
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.rows.size(), 4u);
  for (const auto& row : rep.rows) EXPECT_TRUE(row.equal) << row.quantity;
}

TEST(Crosscheck, CorruptedCellSetFails) {
  auto rng = gen::instance_rng(933, 1);
  const auto [a, b] = gen::random_equal_pair(rng, 2, 40, q(1, 3));
  const auto corrupted = set_union(a, cells(2, q(1, 3), {{40, 40, 0}}));
  const auto wrong = oracle::kernel_values(corrupted, b, kHalf);
  const auto rep = oracle::crosscheck_instance(a, b, kHalf, wrong, "corrupt");
  EXPECT_FALSE(rep.pass());
  EXPECT_NE(oracle::crosscheck_csv_rows(rep).find(",0\n"), std::string::npos);
}

TEST(Crosscheck, SingleWrongValueFails) {
  const auto a = test::l_shape();
  auto values = oracle::kernel_values(a, a, kHalf);
  values.hull_b += q(1, 1000);
  const auto rep = oracle::crosscheck_instance(a, a, kHalf, values);
  EXPECT_FALSE(rep.pass());
  size_t bad = 0;
  for (const auto& row : rep.rows) bad += row.equal ? 0 : 1;
  EXPECT_EQ(bad, 1u);
}

TEST(Crosscheck, CsvSchema) {
  EXPECT_EQ(oracle::crosscheck_csv_header(), "instance_id,quantity,kernel_value,oracle_value,equal");
  const auto a = cells(1, 1, {{0, 0, 0}});
  const auto csv = oracle::crosscheck_csv_rows(oracle::crosscheck_instance(a, a, kHalf, "7"));
  EXPECT_EQ(csv.rfind("7,", 0), 0u);
  EXPECT_NE(csv.find("1/1,1/1,1"), std::string::npos);
}

}  // namespace
}  // namespace bmlab
