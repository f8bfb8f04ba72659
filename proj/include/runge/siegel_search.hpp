#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "runge/bounds.hpp"
#include "runge/congruence.hpp"
#include "runge/linalg.hpp"
#include "runge/modform_space.hpp"

namespace runge {

using CheckList = std::vector<std::pair<std::string, bool>>;

// The map u -> (a_{c,0}, ..., a_{c,m w_c - 1})_{c in Sigma} on integer
// combinations of the basis, after restriction of scalars to Q.
struct PsiSystem {
  std::vector<int> sigma;
  long m = 0;
  long rows_per_cusp = 0;  // nonzero conditions contributed by each cusp (max)
  ZMat matrix;             // one row per (cusp, exponent, zeta coordinate); d columns
  ZMat kernel;             // saturated, LLL-reduced kernel lattice (rows)
  long kernel_lower = 0;   // [K_G:Q] (m sum_{c not in Sigma} w_c - g + 1)
  QVec delta_coords;       // Delta^m in the basis
  bool delta_in_kernel = false;
};

PsiSystem assemble_psi(const FormEngine& E, const IntegralBasis& B, const CurveData& curve,
                       const std::vector<int>& sigma, long m);

struct ShortVector {
  ZVec u;
  mpz_class l1;
  long examined = 0;  // candidates looked at, including rejected multiples of Delta^m
  long rejected = 0;
  bool within_calB = false;
};

// Least (l1, lex) vector among +-b_i, +-b_i +- b_j over the reduced kernel
// basis whose form is not a K_G multiple of Delta^m.
ShortVector short_kernel_vector(const PsiSystem& sys, const IntegralBasis& B,
                                const Interval& log_calB);

// sum_i u_i f_i as one expression (equal trace terms merged).
ModFormExpr combine_forms(const std::vector<ModFormExpr>& forms, const ZVec& u);

// f is a K_G multiple of Delta^m, decided from the infinity expansion at the
// Sturm precision.
bool proportional_to_delta(const ZVec& inf_row, int N, long m, long prec);

// |b_n|_v <= beta max(1, (n/w)^{24m}) at every cusp and place, n below the
// Sturm precision.
BoundCheck check_form_bound(const FormEngine& E, const ModFormExpr& f, const CurveData& curve,
                            long m, const Interval& log_beta);

struct CuspPhi {
  int cusp = 0;
  int width = 0;
  long nu = 0;   // nu_c(f), q_w units
  long ord = 0;  // ord_c(phi) = nu - m w
  bool in_sigma = false;
  CycNum value;  // phi(c) for c in Sigma
};

struct PhiData {
  std::vector<CuspPhi> cusps;
  long pole_total = 0;
  CheckList checks;
};

PhiData construct_phi(const FormEngine& E, const ModFormExpr& f, long m, const CurveData& curve,
                      const std::vector<int>& sigma, const Interval& log_beta);

// Q(x) = prod_{A in R} (x - phi*A); coeffs[i] is the coefficient of x^i as a
// polynomial in j (low degree first).
struct QPoly {
  long degree = 0;
  std::vector<std::vector<mpz_class>> coeffs;
  long pole_sum = 0;     // Pi: sum of pole orders of the phi*A in q_N units
  long checked_to = 0;   // q exponents below this were matched exactly
  CheckList checks;
};

QPoly verify_integral_over_Zj(const FormEngine& E, const ModFormExpr& f, long m, long extra_q = 3);

struct XiData {
  std::vector<int> orbit;
  int cusp = 0;
  int width = 0;
  bool trivial = false;  // phi(c) not in K, xi = 1
  long r = 0;
  CycNum gamma;
  CycNum xi;
  CheckList checks;
};

XiData xi_certificate(const FormEngine& E, const ModFormExpr& f, long m, const CurveData& curve,
                      const std::vector<int>& orbit, const CycNum& phi_c, const std::vector<int>& D_K,
                      const CuspOrbits& orbits, const Interval& log_beta, const Interval& log_Cprime);

struct PhiCertificate {
  int N = 0;
  std::vector<Mat2> generators;
  long m = 0;
  int k = 0;
  std::vector<int> sigma;
  std::vector<int> D_K;
  long basis_dim = 0;
  long kernel_dim = 0;
  long kernel_lower = 0;
  std::vector<ModFormExpr> basis;
  ZVec u;
  mpz_class u_l1;
  ModFormExpr f;
  PhiData phi;
  QPoly q;
  std::vector<XiData> xi;
  BoundReport bounds;
  CheckList checks;
  bool ok() const;
};

struct ConstructOptions {
  BasisOptions basis;
  long extra_q = 3;
};

// basis -> psi -> short vector -> phi -> certificates.
PhiCertificate construct_certificate(const Gl2Subgroup& G, const CurveData& curve,
                                     const std::vector<int>& sigma, const std::vector<int>& D_K,
                                     const CuspOrbits& orbits, const ConstructOptions& opt = {});

// Recheck every assertion of a certificate from its stored data; the basis
// search and the lattice step are not repeated.
CheckList recheck_certificate(const PhiCertificate& cert);

void append_checks(CheckList& into, const CheckList& from, const std::string& prefix = "");
bool all_pass(const CheckList& c);

}  // namespace runge
