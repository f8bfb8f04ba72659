#include <gtest/gtest.h>

#include <cmath>

#include "runge/bounds.hpp"

using namespace runge;

namespace {

// Plain long double evaluations, written out separately from the library.
long double ld_log_beta(int N, long m, long mu) {
  long double lN = std::log((long double)N), lm = std::log((long double)m), l45 = std::log(4.5L);
  long double inner = 3 * std::log(2.0L) + 36 * m * l45 + (108 * m + 15) * lN + (72 * m + 1) * lm;
  return std::log(2.0L) + (m * mu + 1) * inner + 12 * m * l45 + (36 * m + 4) * lN;
}

bool near(const Interval& x, long double v, long double rel) {
  return std::fabs((long double)x.mid_d() - v) <= rel * std::fabs(v) && x.width_d() <= rel * std::fabs(v);
}

}  // namespace

TEST(Constants, LogBetaTwoWays) {
  long double want = std::log(2.0L) + 3 * (3 * std::log(2.0L) + 36 * std::log(4.5L) + 123 * std::log(3.0L)) +
                     12 * std::log(4.5L) + 40 * std::log(3.0L);
  EXPECT_TRUE(near(log_beta(3, 1, 2), want, 1e-12L));
  for (int N : {3, 7, 12})
    for (long m : {1, 3})
      for (long mu : {2, 60}) EXPECT_TRUE(near(log_beta(N, m, mu), ld_log_beta(N, m, mu), 1e-12L));
}

TEST(Constants, CprimeExceedsC) {
  for (int N = 3; N <= 50; ++N)
    for (long m = 1; m <= 20; ++m) EXPECT_TRUE(log_C(N, m).lt(log_Cprime(N, m))) << N << " " << m;
}

TEST(Constants, Monotone) {
  EXPECT_TRUE(log_beta(5, 1, 6).lt(log_beta(6, 1, 6)));
  EXPECT_TRUE(log_beta(5, 1, 6).lt(log_beta(5, 2, 6)));
  EXPECT_TRUE(log_beta(5, 1, 6).lt(log_beta(5, 1, 7)));
}

TEST(Constants, CalBAndAlphaNorm) {
  // calB = (2^3 4.5^{3k} N^{9k+15} m^{6k+1})^{m mu + 1}, k = 12 m
  long double want = 7 * (3 * std::log(2.0L) + 36 * std::log(4.5L) + 123 * std::log(5.0L));
  EXPECT_TRUE(near(log_calB(5, 1, 6), want, 1e-12L));
  long double a = std::log(2.0L * 20) + 12 * std::log(4.5L) + 36 * std::log(5.0L);
  EXPECT_TRUE(near(log_alpha_norm(5, 1, 20), a, 1e-12L));
}

TEST(Chain, OrderingAndChecks) {
  BoundInputs in;
  in.N = 5;
  in.m = 1;
  in.mu = 6;
  in.absG = 20;
  in.sigma_profile = {{1, 1}};
  BoundReport r = height_bound_chain(in);
  EXPECT_TRUE(r.all_ok());
  EXPECT_TRUE(r.height_exact.le(r.height_poly));
  EXPECT_TRUE(r.height_poly.le(r.height_coarse));
  EXPECT_EQ(r.d_exponent, (324 + 18) * 7 + 40 + 151);
  long double poly = 4 * std::pow(10.0L, 4) * std::log(5.0L);
  EXPECT_TRUE(near(r.height_poly, poly, 1e-12L));
}

TEST(Chain, AuxiliaryPolynomial) {
  EXPECT_TRUE(coarse_exact_check(3));  // 375156.25 <= 531441
  for (int N = 3; N <= 12; ++N) EXPECT_TRUE(coarse_exact_check(N));
  EXPECT_TRUE(poly_aux_check(1));
  EXPECT_TRUE(poly_aux_check(0));
  EXPECT_TRUE(poly_aux_check(865));
  EXPECT_NEAR((9 + 222 + 1536 + 2132) / 4.0, 974.75, 0);
}

TEST(BiluParent, Values) {
  EXPECT_TRUE(near(bilu_parent_bound(5, 20, 1), 9000 * std::log(10.0L), 1e-12L));
  long double v = 36 * std::pow(2.0L, 2) * std::pow(12.5L * 20, 2) * std::log(10.0L);
  EXPECT_TRUE(near(bilu_parent_bound(5, 20, 2), v, 1e-12L));
  long double w = 36 * (9 * 48 / 2.0L) * std::log(6.0L);
  EXPECT_TRUE(near(bilu_parent_bound(3, 48, 1), w, 1e-12L));
}

TEST(Sjn, SmallValues) {
  EXPECT_EQ(sjn(1, 12), 6);
  EXPECT_EQ(sjn(2, 4), 8);
  // brute force over compositions for j = 3
  auto d = [](long n) {
    long c = 0;
    for (long i = 1; i <= n; ++i) c += n % i == 0;
    return c;
  };
  for (long n = 3; n <= 20; ++n) {
    long s = 0;
    for (long a = 1; a < n; ++a)
      for (long b = 1; a + b < n; ++b) s += d(a) * d(b) * d(n - a - b);
    EXPECT_EQ(sjn(3, n), s);
  }
  for (int j = 1; j <= 4; ++j)
    for (long n = 1; n <= 200; ++n) EXPECT_TRUE(sjn_bound_check(j, n)) << j << " " << n;
}

TEST(Tails, CnSum) {
  Interval u = u0();
  EXPECT_TRUE(sum_cn_oracle(1, 1, 5, u).le(sum_cn_bound_ii(1, 1, 5, u)));
  EXPECT_TRUE(sum_cn_oracle(1, 1, 5, u).le(sum_cn_bound_i(1, 1, 5, u)));
  EXPECT_TRUE(sum_cn_oracle(1, 5, 40, u).le(sum_cn_bound_i(1, 5, 40, u)));
  EXPECT_TRUE(sum_cn_oracle(2, 2, 6, u).le(sum_cn_bound_ii(2, 2, 6, u)));
}

TEST(Tails, DeltaSum) {
  Interval u = u0();
  EXPECT_TRUE(delta_sum_oracle(1, 3, u).le(delta_sum_bound_ii(1, 3, u)));
  EXPECT_TRUE(delta_sum_oracle(2, 9, u).le(delta_sum_bound_ii(2, 9, u)));
  EXPECT_TRUE(delta_sum_oracle(2, 3, u).le(delta_sum_bound_iii(2, 3, u, 465)));
  EXPECT_TRUE(delta_coeff_bound_check(1, 300));
}

TEST(Tails, HProduct) {
  Interval h = h_product();
  EXPECT_TRUE(h.lt(Interval::from_decimal("1.1104")));
  EXPECT_TRUE(Interval::from_decimal("1.11").lt(h));
}

TEST(Eisenstein, CoefficientBounds) {
  auto r = eisenstein_coeff_bound_check(5, 2, 50, 100, 1);
  EXPECT_GT(r.checked, 0);
  EXPECT_EQ(r.violations, 0);
  auto r1 = eisenstein_coeff_bound_check(5, 1, 20, 100, 2);
  EXPECT_EQ(r1.violations, 0);
}

TEST(Height, Rationals) {
  EXPECT_EQ(height_of_rational(0), 0);
  EXPECT_DOUBLE_EQ(height_of_rational(mpq_class(2, 3)), std::log(3.0));
  EXPECT_DOUBLE_EQ(height_of_rational(-7), std::log(7.0));
}

TEST(Trivial, Bounds) {
  EXPECT_TRUE(trivial_bounds_hold(5, 6, 1));
  EXPECT_TRUE(trivial_bounds_hold(7, 168, 1));
  EXPECT_FALSE(trivial_bounds_hold(3, 14, 1));
  EXPECT_FALSE(trivial_bounds_hold(3, 2, 2));
}
