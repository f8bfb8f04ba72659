#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "runge/interval.hpp"

namespace runge {

struct BoundInputs {
  int N = 3;
  long m = 1;
  long mu = 1;
  long absG = 1;
  std::vector<std::pair<int, int>> sigma_profile;  // (w_i, |Sigma_i|) per orbit
  int s = 1;
};

struct BoundReport {
  BoundInputs in;
  // Enclosures; upper bounds are read from hi().
  Interval log_beta, log_C, log_Cprime, log_calB, log_alpha_norm;
  Interval height_exact;   // mu log(beta C') + log 3500
  Interval height_mid;     // mu d log N
  Interval height_poly;    // 4 (mu+4)^4 log N
  Interval height_coarse;  // N^12 log N
  Interval bilu_parent;
  long d_exponent = 0;     // (324m+18)(m mu+1) + (36m+4) + (144m+7)
  bool mid_applicable = false;
  std::vector<std::pair<std::string, bool>> checks;
  bool all_ok() const;
};

Interval log_beta(int N, long m, long mu);
Interval log_C(int N, long m);
Interval log_Cprime(int N, long m);
Interval log_calB(int N, long m, long mu);
Interval log_alpha_norm(int N, long m, long absG);

BoundReport constants(const BoundInputs& in);
// constants() plus the final height chain and its auxiliary checks.
BoundReport height_bound_chain(const BoundInputs& in);

// 36 s^{s/2+1} (N^2 |G|/2)^s log(2N)
Interval bilu_parent_bound(int N, long absG, int s);

// f(x) = (9x^4 + 222x^3 + 1536x^2 + 2132x)/4 <= 4(x+4)^4 at x = t/2, 0 <= t <= 2 xmax.
bool poly_aux_check(long xmax);
// 4 (N^3/2 + 4)^4 <= N^12, exactly.
bool coarse_exact_check(int N);

// Sum over a_1 + ... + a_j = n (a_i >= 1) of prod d(a_i).
mpz_class sjn(int j, long n);
bool sjn_bound_check(int j, long n);

Interval u0(mpfr_prec_t prec = Interval::default_prec());  // exp(-pi sqrt 3)

// Tail bounds for sum_{n>=B} c_n u^{n/w} with c_n <= max(1, (n/w)^{24m}).
Interval sum_cn_bound_i(long m, int w, long B, const Interval& u);   // B >= 5mw
Interval sum_cn_bound_ii(long m, int w, long B, const Interval& u);  // mw <= B <= 5mw
// Certified enclosure of the sum with c_n = max(1, (n/w)^{24m}).
Interval sum_cn_oracle(long m, int w, long B, const Interval& u);

// Tail bounds for sum_{n>=B} |a_n(Delta^m)| u^n.
Interval delta_sum_bound_ii(long m, long B, const Interval& u);                  // B > 2m
Interval delta_sum_bound_iii(long m, long B, const Interval& u, long constant);  // m < B <= 2m
// Exact coefficients up to a cutoff plus a Cauchy-estimate tail.
Interval delta_sum_oracle(long m, long B, const Interval& u);

// |a_n(Delta^m)| <= 2 n^{6m} for 2 <= n <= nmax.
bool delta_coeff_bound_check(long m, long nmax);

// prod_{n>=1} (1 - u0^n)^{-24}, enclosed with a certified tail.
Interval h_product();

struct EisensteinBoundResult {
  long checked = 0;
  long violations = 0;
};
// Products E_{alpha_1}...E_{alpha_k} for random index lists: |a_0| <= (N/4)^k and
// |a_n| <= 2 n^{-1/2} (N/4 + 2n(log n + 1))^k for 1 <= n <= nmax, every place.
// For k = 1 also |c_n| <= 2 d(n).
EisensteinBoundResult eisenstein_coeff_bound_check(int N, int k, int samples, long nmax,
                                                   unsigned long seed);

// log max(|num|, |den|) in lowest terms.
double height_of_rational(const mpq_class& x);

// mu <= N^3/2, mu + 1 <= 29 N^3/54, m <= N^3/24.
bool trivial_bounds_hold(int N, long mu, long m);

}  // namespace runge
