#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "runge/eisenstein.hpp"
#include "runge/error.hpp"

using namespace runge;

namespace {

// Coefficient of q_N^n, n >= 1, straight from the double sum.
CycNum brute_coeff(int N, int a, int b, long n) {
  CycNum s(N);
  for (long m = 1; m <= n; ++m) {
    if (n % m) continue;
    long k = n / m;
    if ((m - a) % N == 0) s += CycNum::zeta_power(N, b * k);
    if ((m + a) % N == 0) s -= CycNum::zeta_power(N, -b * k);
  }
  return s;
}

}  // namespace

TEST(Eisenstein, ZeroIndex) {
  QExp e = eisenstein_qexp(5, {0, 0}, 20);
  for (long n = 0; n < 20; ++n) EXPECT_TRUE(e.coeff(n).is_zero());
  EXPECT_TRUE(scaled_product(5, {{0, 0}}, 20).is_zero());
}

TEST(Eisenstein, ConstantTerms) {
  EXPECT_EQ(eisenstein_constant(5, {1, 0}), CycNum(5, mpq_class(3, 10)));
  EXPECT_EQ(eisenstein_constant(7, {3, 0}), CycNum(7, mpq_class(1, 2) - mpq_class(3, 7)));
  for (int N : {5, 8}) {
    for (int b = 1; b < N; ++b) {
      CycNum z = CycNum::zeta_power(N, b), one(N, mpq_class(1));
      CycNum expect = ((one + z) / (one - z)).scaled(mpq_class(1, 2));
      EXPECT_EQ(eisenstein_constant(N, {0, b}), expect);
    }
  }
}

TEST(Eisenstein, CoefficientsMatchDoubleSum) {
  for (int N : {3, 5, 8}) {
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (a == 0 && b == 0) continue;
        QExp e = eisenstein_qexp(N, {a, b}, 40);
        for (long n = 1; n < 40; ++n) EXPECT_EQ(e.coeff(n), brute_coeff(N, a, b, n)) << N << a << b << n;
      }
  }
  EXPECT_EQ(eisenstein_qexp(5, {1, 0}, 3).coeff(1), CycNum(5, mpq_class(1)));
}

TEST(Eisenstein, ConstantBound) {
  for (int N : {3, 5, 7, 8})
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        CycNum c = eisenstein_constant(N, {a, b});
        for (int k : CyclotomicField::get(N)->places())
          EXPECT_LE(abs_at_place(c, k, 128).hi_d(), N / 4.0 + 1e-12);
      }
}

TEST(Star, Composition) {
  std::mt19937_64 rng(5);
  int N = 8;
  auto G = gl2_elements(N);
  std::uniform_int_distribution<size_t> pick(0, G.size() - 1);
  for (int t = 0; t < 200; ++t) {
    EisIndex al = make_index(rng() % N, rng() % N, N);
    Mat2 A = G[pick(rng)], B = G[pick(rng)];
    EXPECT_EQ(star_on_index(star_on_index(al, A, N), B, N), star_on_index(al, mat_mul(A, B, N), N));
  }
  EXPECT_EQ(star_on_index({3, 5}, Mat2{}, N), (EisIndex{3, 5}));
}

TEST(Star, MinusIdentityNegates) {
  int N = 7;
  Mat2 mI = mat_reduce(-1, 0, 0, -1, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      EisIndex m = star_on_index({a, b}, mI, N);
      EXPECT_EQ(m, negate_index({a, b}, N));
      EXPECT_TRUE(eisenstein_qexp(N, m, 25).agrees_with(-eisenstein_qexp(N, {a, b}, 25)));
    }
}

TEST(Star, DiagonalActsAsGalois) {
  int N = 5;
  for (int d = 1; d < N; ++d)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        EisIndex img = star_on_index({a, b}, mat_reduce(1, 0, 0, d, N), N);
        EXPECT_EQ(img, make_index(a, static_cast<long>(b) * d, N));
        QExp e = eisenstein_qexp(N, {a, b}, 25), f = eisenstein_qexp(N, img, 25);
        for (long n = 0; n < 25; ++n) EXPECT_EQ(f.coeff(n), galois_apply(d, e.coeff(n)));
      }
}

TEST(ScaledProduct, IntegralWithBoundedConstant) {
  std::mt19937_64 rng(11);
  for (int N = 3; N <= 8; ++N) {
    for (int k = 1; k <= 4; ++k) {
      for (int t = 0; t < 4; ++t) {
        std::vector<EisIndex> idx;
        for (int i = 0; i < k; ++i) idx.push_back(make_index(rng() % N, rng() % N, N));
        IntSeries s = scaled_product(N, idx, 12);
        CycNum a0 = s.coeff(0);
        EXPECT_TRUE(a0.integral());
        double bound = std::pow(N, 2 * k) / std::pow(2, k);
        for (int p : CyclotomicField::get(N)->places())
          EXPECT_LE(abs_at_place(a0, p, 128).hi_d(), bound * (1 + 1e-12));

        // agrees with the product of the exact expansions
        QExp prod = QExp::monomial(N, N, 0, CycNum(N, mpq_class(1)), QExp::kExact);
        for (const auto& x : idx) prod = prod * eisenstein_qexp(N, x, 12).scaled(CycNum(N, mpq_class(2 * N)));
        for (long n = 0; n < 12; ++n) EXPECT_EQ(s.coeff(n), prod.coeff(n));
      }
    }
  }
}

// |a_n| <= 2 n^{-1/2} (N/4 + 2n(log n + 1))^k for products of k series
TEST(ScaledProduct, CoefficientBound) {
  std::mt19937_64 rng(3);
  for (int N : {3, 5, 7}) {
    for (int k = 1; k <= 3; ++k) {
      std::vector<EisIndex> idx;
      for (int i = 0; i < k; ++i) idx.push_back(make_index(1 + rng() % (N - 1), rng() % N, N));
      IntSeries s = scaled_product(N, idx, 60);
      for (long n = 1; n < 60; ++n) {
        double bound = 2 / std::sqrt(double(n)) * std::pow(N / 4.0 + 2 * n * (std::log(double(n)) + 1), k) *
                       std::pow(2.0 * N, k);
        for (int p : CyclotomicField::get(N)->places())
          EXPECT_LE(abs_at_place(s.coeff(n), p, 128).hi_d(), bound);
      }
    }
  }
}

TEST(Oracle, Identity) {
  long I[4] = {1, 0, 0, 1};
  EXPECT_LT(transformation_oracle(5, {2, 3}, I, {0.1, 2.0}, 200), 1e-12);
}

TEST(Oracle, Translation) {
  std::mt19937_64 rng(1);
  long T[4] = {1, 1, 0, 1};
  for (int t = 0; t < 10; ++t) {
    EisIndex al = make_index(rng() % 5, 1 + rng() % 4, 5);
    EXPECT_LT(transformation_oracle(5, al, T, {0.0, 2.0}, 200), 1e-8);
  }
}

TEST(Oracle, Inversion) {
  std::mt19937_64 rng(2);
  long S[4] = {0, -1, 1, 0};
  for (int N : {3, 4, 5}) {
    for (int t = 0; t < 6; ++t) {
      EisIndex al = make_index(rng() % N, rng() % N, N);
      if (al.is_zero()) continue;
      EXPECT_LT(transformation_oracle(N, al, S, {0.3, 1.0}, 400), 1e-6) << N;
    }
  }
}

TEST(Oracle, Errors) {
  long bad[4] = {1, 1, 1, 1};
  EXPECT_THROW(transformation_oracle(5, {1, 0}, bad, {0.0, 2.0}, 200), InputError);
  long S[4] = {0, -1, 1, 0};
  EXPECT_THROW(transformation_oracle(5, {1, 0}, S, {0.0, 1.0}, 3), PrecisionError);
}
