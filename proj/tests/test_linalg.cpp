#include <gtest/gtest.h>

#include <random>

#include "runge/linalg.hpp"

using namespace runge;

namespace {

ZMat random_mat(size_t r, size_t c, std::mt19937_64& rng, int lim = 9) {
  std::uniform_int_distribution<int> d(-lim, lim);
  ZMat M(r, ZVec(c));
  for (auto& row : M)
    for (auto& x : row) x = d(rng);
  return M;
}

ZMat mul(const ZMat& A, const ZMat& B) {
  ZMat C(A.size(), ZVec(B[0].size(), 0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t k = 0; k < B.size(); ++k)
      for (size_t j = 0; j < B[0].size(); ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}

mpz_class dot(const ZVec& a, const ZVec& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Determinant of the Gram matrix, via exact rational elimination.
mpq_class gram_det(const ZMat& B) {
  size_t n = B.size();
  QMat G(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) G[i][j] = dot(B[i], B[j]);
  mpq_class det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && G[p][c] == 0) ++p;
    if (p == n) return 0;
    std::swap(G[p], G[c]);
    if (p != c) det = -det;
    det *= G[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      mpq_class f = G[r][c] / G[c][c];
      for (size_t k = c; k < n; ++k) G[r][k] -= f * G[c][k];
    }
  }
  return det;
}

}  // namespace

TEST(Rank, ProductsOfKnownRank) {
  std::mt19937_64 rng(8);
  for (size_t r = 1; r <= 5; ++r) {
    ZMat M = mul(random_mat(7, r, rng), random_mat(r, 9, rng));
    EXPECT_EQ(bareiss_rank(M), static_cast<long>(r));
    ModPRank mp(9);
    size_t kept = 0;
    for (const auto& row : M) kept += mp.add(row);
    EXPECT_EQ(kept, r);
    QMat Q;
    for (const auto& row : M) {
      QVec q;
      for (const auto& x : row) q.push_back(mpq_class(x, 3));
      Q.push_back(q);
    }
    EXPECT_EQ(rational_rank(Q), static_cast<long>(r));
  }
  EXPECT_EQ(bareiss_rank(ZMat(3, ZVec(4, 0))), 0);
}

TEST(Kernel, SaturatedAndCorrect) {
  ZMat M = {{2, 4}};
  ZMat K = integer_kernel(M, 2);
  ASSERT_EQ(K.size(), 1u);
  EXPECT_EQ(abs(K[0][0]), 2);
  EXPECT_EQ(abs(K[0][1]), 1);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 5; ++t) {
    ZMat A = random_mat(3, 7, rng);
    ZMat K2 = integer_kernel(A, 7);
    EXPECT_EQ(K2.size(), 4u);
    for (const auto& k : K2)
      for (const auto& row : A) EXPECT_EQ(dot(row, k), 0);
    EXPECT_EQ(bareiss_rank(K2), 4);
    // saturation: v/2 in Z^n for no v = sum e_i k_i with some e_i odd
    for (unsigned mask = 1; mask < 16; ++mask) {
      ZVec v(7, 0);
      for (int i = 0; i < 4; ++i)
        if (mask >> i & 1)
          for (int j = 0; j < 7; ++j) v[j] += K2[i][j];
      bool all_even = true;
      for (const auto& x : v) all_even &= mpz_even_p(x.get_mpz_t()) != 0;
      EXPECT_FALSE(all_even);
    }
  }
}

TEST(Kernel, EmptyMatrixGivesFullLattice) {
  ZMat K = integer_kernel({}, 3);
  EXPECT_EQ(K.size(), 3u);
  EXPECT_EQ(bareiss_rank(K), 3);
}

TEST(Solve, LeftSystem) {
  QMat M = {{1, 2, 3}, {0, 1, 4}};
  QVec v = {2, 7, 18};
  auto x = solve_left(M, v);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 3);
  EXPECT_FALSE(solve_left(M, {0, 0, 1}));
}

TEST(Lll, ReducedSameLattice) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    ZMat B = random_mat(4, 6, rng, 1000);
    ZMat R = lll_reduce(B);
    ASSERT_EQ(R.size(), B.size());
    EXPECT_EQ(gram_det(R), gram_det(B));
    // every reduced vector lies in the original lattice
    for (const auto& r : R) {
      ZMat aug = B;
      aug.push_back(r);
      EXPECT_EQ(bareiss_rank(aug), 4);
    }
    // Lovasz condition with delta = 3/4 on Gram-Schmidt norms
    size_t n = R.size();
    std::vector<QVec> bs(n);
    QVec nrm(n);
    QMat mu(n, QVec(n));
    for (size_t i = 0; i < n; ++i) {
      bs[i].assign(R[i].begin(), R[i].end());
      for (size_t j = 0; j < i; ++j) {
        mpq_class d = 0;
        for (size_t c = 0; c < R[i].size(); ++c) d += mpq_class(R[i][c]) * bs[j][c];
        mu[i][j] = d / nrm[j];
        for (size_t c = 0; c < R[i].size(); ++c) bs[i][c] -= mu[i][j] * bs[j][c];
      }
      nrm[i] = 0;
      for (const auto& x : bs[i]) nrm[i] += x * x;
    }
    for (size_t i = 1; i < n; ++i) {
      for (size_t j = 0; j < i; ++j) EXPECT_LE(abs(mu[i][j]), mpq_class(1, 2));
      EXPECT_GE(nrm[i], (mpq_class(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * nrm[i - 1]);
    }
  }
}

TEST(Norms, L1AndPrimitive) {
  EXPECT_EQ(l1_norm({3, -4, 0}), 7);
  ZVec p = primitive_part({6, -9, 12});
  EXPECT_EQ(p, (ZVec{2, -3, 4}));
}
