#include "runge/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "runge/error.hpp"

namespace runge {

long bareiss_rank(ZMat M) {
  if (M.empty()) return 0;
  size_t rows = M.size(), cols = M[0].size();
  mpz_class prev = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && M[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[r], M[piv]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        M[i][j] = M[r][c] * M[i][j] - M[i][c] * M[r][j];
        mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      M[i][c] = 0;
    }
    prev = M[r][c];
    ++r;
  }
  return static_cast<long>(r);
}

ZMat integral_rows(const QMat& M) {
  ZMat out;
  out.reserve(M.size());
  for (const auto& row : M) {
    mpz_class l = 1;
    for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    ZVec z(row.size());
    for (size_t j = 0; j < row.size(); ++j) {
      mpq_class t = row[j] * l;
      z[j] = t.get_num();
    }
    out.push_back(std::move(z));
  }
  return out;
}

long rational_rank(const QMat& M) { return bareiss_rank(integral_rows(M)); }

namespace {

using u128 = unsigned __int128;
constexpr uint64_t P = ModPRank::kPrime;

uint64_t mulmod(uint64_t a, uint64_t b) {
  u128 z = static_cast<u128>(a) * b;
  uint64_t lo = static_cast<uint64_t>(z & P);
  uint64_t hi = static_cast<uint64_t>(z >> 61);
  uint64_t s = lo + hi;
  if (s >= P) s -= P;
  return s;
}

uint64_t submod(uint64_t a, uint64_t b) { return a >= b ? a - b : a + P - b; }

uint64_t powmod(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool ModPRank::add(const ZVec& row) {
  std::vector<uint64_t> r(row.size());
  for (size_t i = 0; i < row.size(); ++i) r[i] = mpz_fdiv_ui(row[i].get_mpz_t(), P);
  return add_residues(std::move(r));
}

bool ModPRank::add_residues(std::vector<uint64_t> r) {
  if (r.size() != ncols_) throw InputError("row length mismatch");
  for (size_t k = 0; k < rows_.size(); ++k) {
    uint64_t f = r[pivots_[k]];
    if (!f) continue;
    const auto& b = rows_[k];
    for (size_t j = pivots_[k]; j < ncols_; ++j)
      if (b[j]) r[j] = submod(r[j], mulmod(f, b[j]));
  }
  size_t piv = 0;
  while (piv < ncols_ && r[piv] == 0) ++piv;
  if (piv == ncols_) return false;
  uint64_t inv = powmod(r[piv], P - 2);
  for (size_t j = piv; j < ncols_; ++j) r[j] = mulmod(r[j], inv);
  rows_.push_back(std::move(r));
  pivots_.push_back(piv);
  return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(QMat& M, size_t cols) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < M.size(); ++c) {
    size_t piv = r;
    while (piv < M.size() && M[piv][c] == 0) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[r], M[piv]);
    mpq_class inv = 1 / M[r][c];
    for (size_t j = c; j < cols; ++j) M[r][j] *= inv;
    for (size_t i = 0; i < M.size(); ++i) {
      if (i == r || M[i][c] == 0) continue;
      mpq_class f = M[i][c];
      for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

QMat rational_kernel(const QMat& M0) {
  if (M0.empty()) return {};
  size_t n = M0[0].size();
  QMat M = M0;
  auto piv = rref(M, n);
  std::vector<bool> is_piv(n, false);
  for (size_t c : piv) is_piv[c] = true;
  QMat K;
  for (size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    QVec v(n, 0);
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -M[r][f];
    K.push_back(std::move(v));
  }
  return K;
}

ZMat integer_kernel(const ZMat& M, size_t n) {
  // Unimodular column operations on M, mirrored on U (starting at I). Columns
  // of U whose image column is zero span the kernel lattice.
  size_t rows = M.size();
  std::vector<ZVec> colsA(n, ZVec(rows));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < n; ++j) colsA[j][i] = M[i][j];
  std::vector<ZVec> colsU(n, ZVec(n, 0));
  for (size_t j = 0; j < n; ++j) colsU[j][j] = 1;

  auto combine = [&](size_t p, size_t q, const mpz_class& a, const mpz_class& b,
                     const mpz_class& c, const mpz_class& d) {
    // (col_p, col_q) <- (a col_p + b col_q, c col_p + d col_q), ad - bc = +-1
    for (auto* cols : {&colsA, &colsU}) {
      auto& X = (*cols)[p];
      auto& Y = (*cols)[q];
      for (size_t i = 0; i < X.size(); ++i) {
        mpz_class x = X[i], y = Y[i];
        X[i] = a * x + b * y;
        Y[i] = c * x + d * y;
      }
    }
  };

  size_t lead = 0;  // columns [0, lead) hold pivots
  for (size_t i = 0; i < rows && lead < n; ++i) {
    for (size_t j = lead + 1; j < n; ++j) {
      if (colsA[j][i] == 0) continue;
      mpz_class x = colsA[lead][i], y = colsA[j][i];
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      mpz_class xg = x / g, yg = y / g;
      // s x + t y = g; second column -yg col_lead + xg col_j has zero entry.
      combine(lead, j, s, t, -yg, xg);
    }
    if (colsA[lead][i] != 0) ++lead;
  }
  ZMat K;
  for (size_t j = lead; j < n; ++j) {
    bool zero = std::all_of(colsA[j].begin(), colsA[j].end(), [](const mpz_class& v) { return v == 0; });
    if (!zero) throw Error("integer kernel: column reduction did not terminate cleanly");
    K.push_back(colsU[j]);
  }
  return K.empty() ? K : lll_reduce(K);
}

std::optional<QVec> solve_left(const QMat& M, const QVec& v) {
  // Columns of the system: x_1..x_r unknowns; equations indexed by coordinates.
  size_t r = M.size();
  size_t n = v.size();
  QMat A(n, QVec(r + 1));
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < r; ++i) A[j][i] = M[i][j];
    A[j][r] = v[j];
  }
  auto piv = rref(A, r + 1);
  if (!piv.empty() && piv.back() == r) return std::nullopt;
  QVec x(r, 0);
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = A[k][r];
  return x;
}

mpz_class l1_norm(const ZVec& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

ZVec primitive_part(const ZVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0 || g == 1) return v;
  ZVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

namespace {

mpz_class dot(const ZVec& a, const ZVec& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// round(a / b) for b > 0, halves rounded towards +infinity
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class num = 2 * a + b, den = 2 * b, q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

// Integral LLL (Cohen, Algorithm 2.6.7) with delta = 3/4.
ZMat lll_reduce(ZMat b) {
  size_t n = b.size();
  if (n <= 1) return b;
  std::vector<mpz_class> d(n + 1);
  std::vector<std::vector<mpz_class>> lam(n, std::vector<mpz_class>(n));
  d[0] = 1;
  // Gram-Schmidt data, index shift: d[i+1] is d_i in the 1-based text.
  auto D = [&](long i) -> mpz_class& { return d[i + 1]; };
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = 0; j <= k; ++j) {
      mpz_class u = dot(b[k], b[j]);
      for (size_t i = 0; i < j; ++i) {
        u = D(i) * u - lam[k][i] * lam[j][i];
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), D(static_cast<long>(i) - 1).get_mpz_t());
      }
      if (j < k)
        lam[k][j] = u;
      else
        D(k) = u;
    }
    if (D(k) == 0) throw InputError("LLL input rows are linearly dependent");
  }

  auto redi = [&](size_t k, size_t l) {
    mpz_class two = 2 * lam[k][l];
    if (abs(two) <= D(l)) return;
    mpz_class q = round_div(lam[k][l], D(l));
    for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[l][t];
    lam[k][l] -= q * D(l);
    for (size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  auto swapi = [&](size_t k) {
    std::swap(b[k], b[k - 1]);
    for (size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    mpz_class l = lam[k][k - 1];
    mpz_class B = D(static_cast<long>(k) - 2) * D(k) + l * l;
    mpz_divexact(B.get_mpz_t(), B.get_mpz_t(), D(static_cast<long>(k) - 1).get_mpz_t());
    for (size_t i = k + 1; i < n; ++i) {
      mpz_class t = lam[i][k];
      mpz_class x = D(k) * lam[i][k - 1] - l * t;
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), D(static_cast<long>(k) - 1).get_mpz_t());
      lam[i][k] = x;
      mpz_class y = B * t + l * lam[i][k];
      mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), D(k).get_mpz_t());
      lam[i][k - 1] = y;
    }
    D(static_cast<long>(k) - 1) = B;
  };

  size_t k = 1;
  while (k < n) {
    redi(k, k - 1);
    mpz_class lhs = 4 * D(k) * D(static_cast<long>(k) - 2);
    mpz_class rhs = 3 * D(static_cast<long>(k) - 1) * D(static_cast<long>(k) - 1) -
                    4 * lam[k][k - 1] * lam[k][k - 1];
    if (lhs < rhs) {
      swapi(k);
      if (k > 1) --k;
    } else {
      for (long l = static_cast<long>(k) - 2; l >= 0; --l) redi(k, static_cast<size_t>(l));
      ++k;
    }
  }
  return b;
}

}  // namespace runge
