#include <gtest/gtest.h>

#include "bmlab/rational.hpp"
#include "support.hpp"

namespace bmlab {
namespace {

using test::q;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), q(1, 2));
  EXPECT_EQ(parse_rational("-4"), q(-4));
  EXPECT_EQ(parse_rational("0.125"), q(1, 8));
  EXPECT_EQ(parse_rational("-1.5"), q(-3, 2));
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_rational(""), InvalidArgument);
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("one"), InvalidArgument);
  EXPECT_THROW(parse_rational("1/2/3"), InvalidArgument);
}

TEST(Rational, FractionIsCanonical) {
  const Rational r = fraction(6, -4);
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_THROW(fraction(1, 0), InvalidArgument);
}

TEST(Rational, SerializesAsNumOverDen) {
  EXPECT_EQ(to_string(q(1, 120)), "1/120");
  EXPECT_EQ(to_string(q(3)), "3/1");
  EXPECT_EQ(to_string(q(-2, 4)), "-1/2");
}

TEST(Rational, FloorAndPower) {
  EXPECT_EQ(floor(q(7, 2)), 3);
  EXPECT_EQ(floor(q(-7, 2)), -4);
  EXPECT_EQ(floor(q(4)), 4);
  EXPECT_EQ(pow(q(2, 3), 3), q(8, 27));
  EXPECT_EQ(pow(q(5), 0), q(1));
}

TEST(Rational, RoundDyadic) {
  EXPECT_EQ(round_dyadic(0.375, 3), q(3, 8));
  EXPECT_EQ(round_dyadic(0.3, 2), q(1, 4));
}

TEST(Weight, AcceptsOpenUnitInterval) {
  const Weight t = Weight::parse("2/6");
  EXPECT_EQ(t.num(), 1);
  EXPECT_EQ(t.den(), 3);
  EXPECT_EQ(t.complement(), q(2, 3));
  EXPECT_THROW(Weight(q(0)), InvalidArgument);
  EXPECT_THROW(Weight(q(1)), InvalidArgument);
  EXPECT_THROW(Weight::parse("3/2"), InvalidArgument);
}

TEST(PointOps, DotNormAndDistance) {
  const Point a = test::pt({q(1), q(2)}), b = test::pt({q(3), q(-1)});
  EXPECT_EQ(dot(a, b), q(1));
  EXPECT_EQ(norm_sq(a), q(5));
  EXPECT_EQ(dist_sq(a, b), q(13));
  EXPECT_EQ(a + b, test::pt({q(4), q(1)}));
  EXPECT_EQ(q(1, 2) * a, test::pt({q(1, 2), q(1)}));
}

}  // namespace
}  // namespace bmlab
