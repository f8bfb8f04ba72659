#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "runge/cyclotomic.hpp"

namespace runge {

// 2x2 matrix with entries in [0, N), row-major (a b; c d).
struct Mat2 {
  int a = 1, b = 0, c = 0, d = 1;
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator<(const Mat2& o) const;
};

Mat2 mat_reduce(long a, long b, long c, long d, int N);
Mat2 mat_mul(const Mat2& x, const Mat2& y, int N);
Mat2 mat_inv(const Mat2& x, int N);
Mat2 mat_neg(const Mat2& x, int N);
int mat_det(const Mat2& x, int N);
int mat_code(const Mat2& x, int N);
Mat2 mat_from_code(int code, int N);
std::string mat_str(const Mat2& x);

std::vector<Mat2> gl2_elements(int N);
std::vector<Mat2> sl2_elements(int N);

class Gl2Subgroup {
 public:
  Gl2Subgroup() = default;
  int level() const { return N_; }
  const std::vector<Mat2>& generators() const { return gens_; }
  const std::vector<Mat2>& elements() const { return elems_; }
  const std::vector<int>& det_image() const { return dets_; }
  size_t order() const { return elems_.size(); }
  bool contains(const Mat2& x) const { return member_[mat_code(x, N_)] != 0; }
  bool contains_minus_identity() const;

 private:
  friend Gl2Subgroup subgroup_closure(int N, const std::vector<Mat2>& gens);
  int N_ = 0;
  std::vector<Mat2> gens_;
  std::vector<Mat2> elems_;  // sorted
  std::vector<char> member_;
  std::vector<int> dets_;
};

Gl2Subgroup subgroup_closure(int N, const std::vector<Mat2>& gens);
Gl2Subgroup adjoin_minus_identity(const Gl2Subgroup& G);

// Generator lists for the standard test groups.
std::vector<Mat2> gl2_generators(int N);
std::vector<Mat2> borel_generators(int N);             // upper triangular
std::vector<Mat2> split_diagonal_generators(int N);    // {+-(1 0; 0 *)}
std::vector<Mat2> sl2_generators(int N);

struct CuspData {
  Mat2 rep;              // lexicographically least matrix of the double coset
  int width = 0;
  int orbit_id = -1;
  std::vector<int> cosets;  // right cosets of Gamma in SL2 forming this cusp
};

struct CurveData {
  int N = 0;
  long group_order = 0;  // |G| with -I adjoined
  long mu = 0;
  long genus = 0;
  int e2 = 0, e3 = 0;
  std::vector<CuspData> cusps;  // cusps[0] is the cusp at infinity
  std::vector<int> det_image;
  int kg_degree = 1;            // [K_G : Q]
  std::vector<int> coset_of;    // mat_code -> right coset id (SL2 elements only)
  std::vector<int> cusp_of_coset;

  int cusp_of(const Mat2& A) const;  // A in SL2(Z/N)
  long width_sum(const std::vector<int>& cusp_ids) const;
};

CurveData curve_invariants(const Gl2Subgroup& G);

// Least j >= 1 with A T^j A^{-1} in G (G must contain -I).
int cusp_width_by_conjugation(const Gl2Subgroup& G, const Mat2& A);

struct CuspOrbits {
  std::vector<int> orbit_of;                 // per cusp
  std::vector<std::vector<int>> orbits;      // cusp ids, canonical order
  std::map<int, std::vector<int>> action;    // d -> permutation of cusp ids
  int count() const { return static_cast<int>(orbits.size()); }
};

// Orbits of sigma_d, d in D, on the cusps, read off from per-cusp value vectors
// of functions defined over K_G that are regular at every cusp.
CuspOrbits galois_orbits_of_cusps(const CurveData& curve, const std::vector<int>& D,
                                  const std::vector<std::vector<CycNum>>& separating_values);

bool runge_condition(int orbit_count, int s);

// Least m >= 1 with m * sum_{c not in sigma} w_c > g.
long compute_m(const CurveData& curve, const std::vector<int>& sigma);

// Representatives x of the right cosets G x in GL2(Z/N).
std::vector<Mat2> right_coset_representatives(const Gl2Subgroup& G);

}  // namespace runge
