#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace runge {

using ZVec = std::vector<mpz_class>;
using QVec = std::vector<mpq_class>;
using ZMat = std::vector<ZVec>;  // row-major
using QMat = std::vector<QVec>;

// Rank via fraction-free (Bareiss) elimination.
long bareiss_rank(ZMat M);
long rational_rank(const QMat& M);

// Clear denominators row by row.
ZMat integral_rows(const QMat& M);

// Incremental rank over F_p, p = 2^61 - 1. add() keeps the row iff it is
// independent of the rows kept so far.
class ModPRank {
 public:
  static constexpr uint64_t kPrime = (uint64_t{1} << 61) - 1;
  explicit ModPRank(size_t ncols) : ncols_(ncols) {}
  bool add(const ZVec& row);
  bool add_residues(std::vector<uint64_t> row);
  size_t rank() const { return rows_.size(); }

 private:
  size_t ncols_;
  std::vector<std::vector<uint64_t>> rows_;  // echelon, pivot normalised to 1
  std::vector<size_t> pivots_;
};

// Basis (as rows) of { x : M x = 0 } over Q.
QMat rational_kernel(const QMat& M);

// Basis (as rows) of the lattice { x in Z^n : M x = 0 }, where M has n
// columns. The lattice is saturated: it equals the rational kernel meet Z^n.
ZMat integer_kernel(const ZMat& M, size_t ncols);

// Solve x * M = v for x (M given as rows). nullopt if v is not in the row span.
std::optional<QVec> solve_left(const QMat& M, const QVec& v);

// LLL reduction (delta = 3/4) of linearly independent integer rows.
ZMat lll_reduce(ZMat basis);

mpz_class l1_norm(const ZVec& v);
ZVec primitive_part(const ZVec& v);

}  // namespace runge
