#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "runge/congruence.hpp"
#include "runge/eisenstein.hpp"
#include "runge/linalg.hpp"
#include "runge/qexp.hpp"

namespace runge {

// Evaluates trace forms (2N)^k sum_{g in G} zeta^{j det(gA)} prod E_{alpha_i g A}.
class FormEngine {
 public:
  explicit FormEngine(const Gl2Subgroup& G);  // -I is adjoined if missing
  int level() const { return N_; }
  const Gl2Subgroup& group() const { return G_; }

  // Integer combination sum_t c_t * trace(t), transformed by A, q_N exponents < prec.
  IntSeries combination_at(const std::vector<std::pair<mpz_class, TraceTerm>>& terms,
                           const Mat2& A, long prec) const;
  IntSeries trace_at(const TraceTerm& t, const Mat2& A, long prec) const;

 private:
  int N_;
  Gl2Subgroup G_;
};

// Integer combination of trace terms of a fixed weight.
class ModFormExpr {
 public:
  ModFormExpr() = default;
  ModFormExpr(int level, int weight, std::vector<std::pair<mpz_class, TraceTerm>> terms);
  static ModFormExpr trace(int level, const TraceTerm& t);

  int level() const { return N_; }
  int weight() const { return k_; }
  const std::vector<std::pair<mpz_class, TraceTerm>>& terms() const { return terms_; }

  // f*A as an integral q_N series; expansions are cached per matrix.
  IntSeries expand(const FormEngine& E, const Mat2& A, long prec) const;

 private:
  struct Cache {
    std::mutex mu;
    std::map<int, IntSeries> by_matrix;
  };
  int N_ = 0;
  int k_ = 0;
  std::vector<std::pair<mpz_class, TraceTerm>> terms_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// floor(k * mubar_N / 12) + 1 with mubar_N = |SL2(Z/N)| / 2.
long sturm_precision(int N, int k);

// Expansion of f*A in q_w, where every q_N exponent must be a multiple of N/w.
QExp expansion_at(const FormEngine& E, const ModFormExpr& f, const Mat2& A, int width, long prec_qN);
QExp expansion_at_cusp(const FormEngine& E, const ModFormExpr& f, const CurveData& curve, int cusp,
                       long prec_qN);
// Same grid test and conversion for an already computed q_N series.
QExp series_on_grid(const IntSeries& s, int width);

// Vanishing order at the cusp in q_w units; nullopt for the zero form (the
// Sturm precision decides vanishing).
std::optional<long> nu_at_cusp(const FormEngine& E, const ModFormExpr& f, const CurveData& curve,
                               int cusp);

// dim_{K_G} M_k for even k >= 2.
long dimension_weight_k(const CurveData& curve, int k);
struct RRDims {
  long dim_M;       // m mu - g + 1
  long dim_W_lower; // m sum_{c not in sigma} w_c - g + 1
};
RRDims dimension_rr(const CurveData& curve, long m, const std::vector<int>& sigma);

struct BasisOptions {
  uint64_t seed = 1;
  long prec = 0;            // q_N precision; 0 selects the Sturm precision
  long max_candidates = 0;  // 0 selects 20 d + 200
  int extra_checks = 5;
};

struct IntegralBasis {
  int N = 0;
  int k = 0;
  long d = 0;       // dim over Q
  long prec = 0;    // q_N precision of the rows
  long candidates_tried = 0;
  std::vector<ModFormExpr> forms;
  ZMat rows;        // infinity-cusp coefficients, n * phi + r
};

// Deterministic stream of random trace terms of weight k.
std::vector<TraceTerm> candidate_terms(int N, int k, uint64_t seed, size_t start, size_t count);

IntegralBasis build_basis(const FormEngine& E, const CurveData& curve, int k,
                          const BasisOptions& opt = {});

struct BoundCheck {
  long coefficients = 0;
  long violations = 0;
  long interval_fallbacks = 0;
};
// |a_n|_v <= 2|G| 4.5^k N^k max(N^k, n^{2k}) for every basis form, every cusp
// representative, every q_N exponent below the basis precision, every place.
BoundCheck verify_small_basis_bound(const FormEngine& E, const IntegralBasis& B,
                                    const CurveData& curve);

// Values a_0(f*A) at each cusp for a family of weight-k trace forms; these are
// the values of f / E_k, which lie in K_G(X_G) and are regular at every cusp.
std::vector<std::vector<CycNum>> cusp_value_family(const FormEngine& E, const CurveData& curve,
                                                   int k, size_t count, uint64_t seed);

// Orbits of sigma_d (d in D) on cusps, enlarging the separating family as needed.
CuspOrbits compute_cusp_orbits(const FormEngine& E, const CurveData& curve,
                               const std::vector<int>& D, uint64_t seed = 7);

// Coordinates (over Q) of a series, given by its infinity expansion to the
// basis precision, in the basis rows.
std::optional<QVec> coordinates_in_basis(const IntegralBasis& B, const IntSeries& s);

// Delta^m as a level-N integral q_N series.
IntSeries delta_power_series(int N, long m, long prec);

// Flattened coefficients n * phi + r for n < prec.
ZVec flatten(const IntSeries& s, long prec);

}  // namespace runge
