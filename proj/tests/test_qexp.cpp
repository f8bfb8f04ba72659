#include <gtest/gtest.h>

#include <random>

#include "runge/error.hpp"
#include "runge/qexp.hpp"

using namespace runge;

namespace {

QExp random_series(int N, int w, long terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-20, 20);
  std::vector<CycNum> cs;
  for (long i = 0; i < terms; ++i) {
    std::vector<mpq_class> c(euler_phi(N));
    for (auto& x : c) x = d(rng);
    cs.emplace_back(N, c);
  }
  return QExp(N, w, 0, terms, cs);
}

CycNum integer(int N, long v) { return CycNum(N, mpq_class(v)); }

}  // namespace

TEST(QExp, MonomialShift) {
  QExp a(5, 5, 1, 3, {integer(5, 1), integer(5, 0)});
  QExp b = QExp::monomial(5, 5, 1, integer(5, 1), QExp::kExact);
  QExp p = a * b;
  EXPECT_EQ(p.prec(), 4);
  EXPECT_EQ(p.coeff(2), integer(5, 1));
  EXPECT_TRUE(p.coeff(3).is_zero());
  EXPECT_THROW(p.coeff(4), PrecisionError);
}

TEST(QExp, ProductMatchesConvolution) {
  std::mt19937_64 rng(4);
  QExp a = random_series(5, 5, 30, rng), b = random_series(5, 5, 30, rng);
  QExp p = series_arith(a, b, SeriesOp::mul);
  for (long n = 0; n < 30; ++n) {
    CycNum s(5);
    for (long i = 0; i <= n; ++i) s += a.coeff(i) * b.coeff(n - i);
    EXPECT_EQ(p.coeff(n), s) << n;
  }
}

TEST(QExp, MixedWidthsMergeOnTheFineGrid) {
  QExp a = QExp::from_integers(5, 1, 0, 3, {mpz_class(1), mpz_class(2), mpz_class(3)});
  QExp b = QExp::from_integers(5, 5, 0, 12, std::vector<mpz_class>(12, 1));
  QExp s = a + b;
  EXPECT_EQ(s.width(), 5);
  EXPECT_EQ(s.prec(), 12);
  EXPECT_EQ(s.coeff(0), integer(5, 2));
  EXPECT_EQ(s.coeff(1), integer(5, 1));
  EXPECT_EQ(s.coeff(5), integer(5, 3));
  EXPECT_EQ(s.coeff(10), integer(5, 4));
}

TEST(QExp, Algebra) {
  std::mt19937_64 rng(9);
  QExp a = random_series(7, 7, 12, rng), b = random_series(7, 7, 12, rng), c = random_series(7, 7, 12, rng);
  EXPECT_TRUE((a * b).agrees_with(b * a));
  EXPECT_TRUE(((a * b) * c).agrees_with(a * (b * c)));
  QExp longer = random_series(7, 7, 20, rng);
  QExp x = longer.truncated(12);
  EXPECT_TRUE((x * a).agrees_with(longer * a));
}

TEST(QExp, DeltaPower) {
  QExp d = delta_power(1, 6);
  EXPECT_EQ(d.coeff(1), integer(1, 1));
  EXPECT_EQ(d.coeff(2), integer(1, -24));
  EXPECT_EQ(d.coeff(3), integer(1, 252));
  EXPECT_EQ(d.coeff(4), integer(1, -1472));
  QExp d2 = delta_power(2, 12);
  EXPECT_TRUE(d2.agrees_with(delta_power(1, 12) * delta_power(1, 12)));
  EXPECT_EQ(vanishing_order(d2), 2);
  EXPECT_EQ(d2.coeff(2), integer(1, 1));
}

TEST(QExp, HAndJ) {
  QExp j = j_series(4);
  EXPECT_EQ(j.start(), -1);
  EXPECT_EQ(j.coeff(-1), integer(1, 1));
  EXPECT_EQ(j.coeff(0), integer(1, 744));
  EXPECT_EQ(j.coeff(1), integer(1, 196884));
  EXPECT_EQ(j.coeff(2), integer(1, 21493760));
  QExp h = h_series(20);
  EXPECT_EQ(h.coeff(0), integer(1, 1));
  QExp one = delta_power(1, 21) * QExp::monomial(1, 1, -1, integer(1, 1), QExp::kExact) * h;
  EXPECT_EQ(one.coeff(0), integer(1, 1));
  for (long n = 1; n < one.prec(); ++n) EXPECT_TRUE(one.coeff(n).is_zero()) << n;
}

TEST(QExp, VanishingOrder) {
  EXPECT_EQ(vanishing_order(delta_power(1, 5)), 1);
  EXPECT_EQ(vanishing_order(QExp::zero(1, 1, QExp::kExact)), std::nullopt);
  QExp f = QExp::monomial(5, 5, 3, integer(5, 1), QExp::kExact) +
           QExp::monomial(5, 5, 7, integer(5, 2), QExp::kExact);
  EXPECT_EQ(vanishing_order(f), 3);
  EXPECT_THROW(vanishing_order(QExp::zero(5, 5, 10)), PrecisionError);
}

TEST(QExp, DeltaCoefficientBound) {
  for (long m = 1; m <= 2; ++m) {
    auto a = delta_power_coeffs(m, 200);
    for (long n = 2; n < 200; ++n) {
      mpz_class b;
      mpz_ui_pow_ui(b.get_mpz_t(), n, 6 * m);
      EXPECT_LE(abs(a[n]), 2 * b);
    }
  }
}
