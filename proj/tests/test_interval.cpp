#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "runge/interval.hpp"

using runge::Interval;

namespace {

// x encloses a value that the double v approximates to within rel.
bool near(const Interval& x, double v, double rel = 1e-15) {
  double tol = rel * std::max(1.0, std::fabs(v));
  return x.lo_d() <= v + tol && x.hi_d() >= v - tol && x.width_d() <= tol;
}

}  // namespace

TEST(Interval, DecimalLiteralIsEnclosed) {
  Interval x = Interval::from_decimal("96.6");
  EXPECT_TRUE(near(x, 96.6));
  EXPECT_LT(x.width_d(), 1e-30);
  Interval y = Interval::from_decimal("0.024");
  EXPECT_TRUE(near(y, 0.024));
}

TEST(Interval, PiAndLogs) {
  EXPECT_TRUE(near(Interval::pi(), M_PI));
  EXPECT_TRUE(near(Interval::from_long(10).log(), std::log(10.0)));
  EXPECT_TRUE(Interval::from_long(1).log().contains(0.0));
}

TEST(Interval, OutwardRoundingKeepsThirdInside) {
  Interval t = Interval::from_long(1) / Interval::from_long(3);
  Interval back = t * Interval::from_long(3);
  EXPECT_TRUE(back.contains(1.0));
  EXPECT_LE(back.lo_d(), 1.0);
  EXPECT_GE(back.hi_d(), 1.0);
}

TEST(Interval, PowMatchesRepeatedProduct) {
  Interval x = Interval::from_decimal("4.5");
  Interval p = x.pow(7);
  Interval q = x * x * x * x * x * x * x;
  EXPECT_TRUE(p.contains(std::pow(4.5, 7)));
  EXPECT_TRUE(q.contains(std::pow(4.5, 7)));
}

TEST(Interval, ComparisonsAreOneSided) {
  Interval a = Interval::from_long(2), b = Interval::from_long(3);
  EXPECT_TRUE(a.lt(b));
  EXPECT_TRUE(a.le(b));
  EXPECT_FALSE(b.le(a));
  Interval h = Interval::hull(a, b);
  EXPECT_FALSE(h.le(a));
  EXPECT_FALSE(h.lt(b));
}

TEST(Interval, TrigAtRationalAngles) {
  EXPECT_TRUE(near(runge::cos_2pi(1, 3), -0.5));
  EXPECT_TRUE(near(runge::sin_2pi(1, 4), 1.0));
  EXPECT_TRUE(near(runge::cos_2pi(1, 5), std::cos(2 * M_PI / 5)));
}

TEST(Interval, HigherPrecisionIsNarrower) {
  Interval lo = Interval::from_long(3, 64).log();
  Interval hi = Interval::from_long(3, 256).log();
  EXPECT_LT(hi.width_d(), lo.width_d());
}
