#pragma once

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <vector>

#include "runge/congruence.hpp"
#include "runge/cyclotomic.hpp"
#include "runge/qexp.hpp"

namespace runge {

struct EisIndex {
  int a = 0, b = 0;
  bool operator==(const EisIndex& o) const { return a == o.a && b == o.b; }
  bool operator<(const EisIndex& o) const { return a < o.a || (a == o.a && b < o.b); }
  bool is_zero() const { return a == 0 && b == 0; }
};

EisIndex make_index(long a, long b, int N);
EisIndex negate_index(const EisIndex& x, int N);
// Row vector times matrix: (a, b) A.
EisIndex star_on_index(const EisIndex& alpha, const Mat2& A, int N);

// Constant term c_0 of E_alpha.
CycNum eisenstein_constant(int N, const EisIndex& alpha);
// Width-N expansion of E_alpha with exponents < prec (in q_N).
QExp eisenstein_qexp(int N, const EisIndex& alpha, long prec);

// Dense series over Z[zeta_N]: coefficient of q_N^n stored as phi(N)
// integer coordinates at c[n*phi .. n*phi+phi).
struct IntSeries {
  int N = 0;
  int phi = 0;
  long prec = 0;
  std::vector<mpz_class> c;

  IntSeries() = default;
  IntSeries(int level, long precision);
  mpz_class* at(long n) { return c.data() + n * phi; }
  const mpz_class* at(long n) const { return c.data() + n * phi; }
  bool zero_at(long n) const;
  CycNum coeff(long n) const;
  QExp to_qexp() const;
  bool is_zero() const;
  IntSeries truncated(long p) const;
};

// Truncated product to precision p (p <= both operand precisions).
IntSeries int_mul(const IntSeries& x, const IntSeries& y, long p);
// acc += s * x, where s is an element of Z[zeta_N] given by coordinates.
void int_addmul(IntSeries& acc, const IntSeries& x, const std::vector<mpz_class>& s);
void int_add(IntSeries& acc, const IntSeries& x);
void int_scale(IntSeries& x, const mpz_class& s);

// 2N * E_alpha as an integral series; cached by (N, +-alpha).
std::shared_ptr<const IntSeries> scaled_eisenstein(int N, const EisIndex& alpha, long prec);
void clear_eisenstein_cache();

// (2N)^k E_{alpha_1} ... E_{alpha_k}.
IntSeries scaled_product(int N, const std::vector<EisIndex>& indices, long prec);

// zeta_N^j * E_{alpha_1} ... E_{alpha_k}, the summand of a trace form.
struct TraceTerm {
  int zeta_power = 0;
  std::vector<EisIndex> indices;
  int weight() const { return static_cast<int>(indices.size()); }
};

// (cT+d)^{-1} E_alpha(gamma tau) - E_{alpha gamma}(tau) in absolute value, for
// gamma = (a b; c d) in SL2(Z), using prec terms of each expansion. Throws
// PrecisionError when the truncation tail is not below tol/10 at both points.
double transformation_oracle(int N, const EisIndex& alpha, const long gamma[4],
                             std::complex<double> tau, long prec, double tol = 1e-6);

}  // namespace runge
