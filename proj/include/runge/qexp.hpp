#pragma once

#include <gmpxx.h>

#include <limits>
#include <optional>
#include <vector>

#include "runge/cyclotomic.hpp"

namespace runge {

// Truncated Laurent series in q_w = q_N^(N/w) with coefficients in Q(zeta_N).
// Coefficients at exponents < prec are known; prec == kExact marks a finite
// series whose unstored coefficients are all zero.
class QExp {
 public:
  static constexpr long kExact = std::numeric_limits<long>::max() / 8;

  QExp() = default;
  QExp(int level, int width, long start, long prec, std::vector<CycNum> coeffs);
  static QExp zero(int level, int width, long prec);
  static QExp monomial(int level, int width, long exponent, const CycNum& c, long prec);
  // Integer series sum_n c[n] q_w^(start+n).
  static QExp from_integers(int level, int width, long start, long prec,
                            const std::vector<mpz_class>& c);

  int level() const { return N_; }
  int width() const { return w_; }
  long start() const { return start_; }
  long prec() const { return prec_; }
  bool exact() const { return prec_ >= kExact; }
  const std::vector<CycNum>& coeffs() const { return c_; }

  // Coefficient of q_w^n; throws PrecisionError if n >= prec.
  CycNum coeff(long n) const;

  // Re-index in q_{w'} with w | w' | N.
  QExp rewidth(int new_width) const;
  QExp truncated(long new_prec) const;

  QExp operator+(const QExp& o) const;
  QExp operator-(const QExp& o) const;
  QExp operator*(const QExp& o) const;
  QExp operator-() const;
  QExp scaled(const CycNum& s) const;

  // True if all coefficients known to both operands agree.
  bool agrees_with(const QExp& o) const;
  bool is_zero_to_precision() const;

 private:
  void trim();
  int N_ = 1;
  int w_ = 1;
  long start_ = 0;
  long prec_ = 0;
  std::vector<CycNum> c_;
};

enum class SeriesOp { add, mul };
QExp series_arith(const QExp& a, const QExp& b, SeriesOp op);

// Least exponent with a nonzero coefficient, std::nullopt for the exact zero
// series; PrecisionError when all known coefficients vanish.
std::optional<long> vanishing_order(const QExp& f);

// Coefficients of prod_{n>=1} (1 - q^n)^a for exponents 0 .. count-1.
std::vector<mpz_class> eta_power_coeffs(long a, long count);
// Coefficients of Delta^m = q^m prod (1-q^n)^(24m) for exponents 0 .. count-1.
std::vector<mpz_class> delta_power_coeffs(long m, long count);
// 1 + 240 sum sigma_3(n) q^n.
std::vector<mpz_class> e4_coeffs(long count);

QExp delta_power(long m, long prec, int level = 1);
QExp h_series(long prec, int level = 1);
QExp j_series(long prec, int level = 1);

}  // namespace runge
