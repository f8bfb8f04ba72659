#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "runge/interval.hpp"

namespace runge {

// Shared tables for Q(zeta_N) in the power basis 1, x, ..., x^(phi-1) modulo
// the N-th cyclotomic polynomial.
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(int N);

  int level() const { return N_; }
  int degree() const { return phi_; }
  // Monic integer coefficients of Phi_N, low degree first, length phi+1.
  const std::vector<long>& cyclotomic_poly() const { return poly_; }
  // Integer coordinates of x^e mod Phi_N for 0 <= e < N.
  const std::vector<long>& power(int e) const { return powers_[((e % N_) + N_) % N_]; }
  const std::vector<int>& units() const { return units_; }
  // One representative k of each pair {k, -k}: the infinite places.
  const std::vector<int>& places() const { return places_; }
  bool is_unit(long d) const;

 private:
  explicit CyclotomicField(int N);
  int N_;
  int phi_;
  std::vector<long> poly_;
  std::vector<std::vector<long>> powers_;
  std::vector<int> units_;
  std::vector<int> places_;
};

struct InfinitePlace {
  int level;
  int embedding_exponent;  // zeta_N -> exp(2 pi i k / N)
};

std::vector<InfinitePlace> infinite_places(int N);

// Element of Q(zeta_N), canonical representative of degree < phi(N).
class CycNum {
 public:
  CycNum() = default;
  explicit CycNum(int N);
  CycNum(int N, const mpq_class& c);
  CycNum(int N, std::vector<mpq_class> coeffs);
  static CycNum zeta_power(int N, long e);

  int level() const { return N_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  const CyclotomicField& field() const { return *F_; }
  bool integral() const { return integral_; }
  bool is_zero() const;
  bool is_rational() const;
  mpq_class rational_value() const;  // requires is_rational()

  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator/(const CycNum& o) const;
  CycNum operator-() const;
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  CycNum scaled(const mpq_class& s) const;
  CycNum pow(unsigned long e) const;
  CycNum inverse() const;
  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  // Sum of |coordinates|; an upper bound for |x|_v at every infinite place.
  mpq_class l1_norm() const;
  std::string str() const;

 private:
  void refresh();
  int N_ = 0;
  std::shared_ptr<const CyclotomicField> F_;
  std::vector<mpq_class> c_;
  bool integral_ = true;
};

enum class CycOp { add, sub, mul, div };
CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op);

// sigma_d(zeta_N) = zeta_N^d.
CycNum galois_apply(long d, const CycNum& x);

// Enclosure of |x|_v for the embedding zeta_N -> exp(2 pi i k/N).
Interval abs_at_place(const CycNum& x, const InfinitePlace& v, mpfr_prec_t prec_bits);
Interval abs_at_place(const CycNum& x, int k, mpfr_prec_t prec_bits);

// Absolute field norm to Q.
mpq_class field_norm(const CycNum& x);

// Product of sigma_d(x) over coset representatives of D / H, where H is the
// stabilizer of x inside D (or the supplied subgroup H, which must fix x).
CycNum norm_to_subfield(const CycNum& x, const std::vector<int>& D);
CycNum norm_to_subfield(const CycNum& x, const std::vector<int>& D, const std::vector<int>& H);

// Closure of a set of units mod N under multiplication.
std::vector<int> unit_subgroup(int N, const std::vector<int>& gens);
int euler_phi(int N);

// Reduce an integer polynomial (low degree first, any length) modulo Phi_N
// into phi(N) integer coordinates. Used by the integer series kernels.
void reduce_int_poly(const CyclotomicField& F, std::vector<mpz_class>& raw, mpz_class* out);

}  // namespace runge
