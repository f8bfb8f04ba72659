#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace runge {

// Closed real interval with MPFR endpoints. Every operation rounds the lower
// endpoint down and the upper endpoint up, so the true value stays inside.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = default_prec());
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_long(long v, mpfr_prec_t prec = default_prec());
  static Interval from_mpz(const mpz_class& v, mpfr_prec_t prec = default_prec());
  static Interval from_mpq(const mpq_class& v, mpfr_prec_t prec = default_prec());
  // Decimal literal such as "96.6" or "0.024", enclosed exactly.
  static Interval from_decimal(const std::string& s, mpfr_prec_t prec = default_prec());
  static Interval pi(mpfr_prec_t prec = default_prec());
  static Interval hull(const Interval& a, const Interval& b);

  static mpfr_prec_t default_prec();
  static void set_default_prec(mpfr_prec_t p);

  mpfr_prec_t prec() const { return prec_; }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }
  mpfr_ptr mlo() { return lo_; }
  mpfr_ptr mhi() { return hi_; }
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const;
  double width_d() const;

  bool contains(double x) const;
  bool le(const Interval& o) const { return mpfr_lessequal_p(hi_, o.lo_) != 0; }
  bool lt(const Interval& o) const { return mpfr_less_p(hi_, o.lo_) != 0; }
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval operator-() const;
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
  Interval& operator*=(const Interval& b) { return *this = *this * b; }

  Interval sqr() const;
  Interval sqrt() const;
  Interval log() const;
  Interval exp() const;
  Interval abs() const;
  Interval pow(long e) const;

  std::string str(int digits = 17) const;

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

Interval max(const Interval& a, const Interval& b);

// Enclosures of cos(2*pi*num/den) and sin(2*pi*num/den).
Interval cos_2pi(long num, long den, mpfr_prec_t prec = Interval::default_prec());
Interval sin_2pi(long num, long den, mpfr_prec_t prec = Interval::default_prec());

}  // namespace runge
