#include "runge/interval.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace runge {

namespace {

std::atomic<long> g_default_prec{128};

// Scratch value with its own lifetime, used for endpoint candidates.
struct Tmp {
  mpfr_t v;
  explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

mpfr_prec_t join_prec(const Interval& a, const Interval& b) {
  return std::max(a.prec(), b.prec());
}

}  // namespace

mpfr_prec_t Interval::default_prec() { return g_default_prec.load(); }
void Interval::set_default_prec(mpfr_prec_t p) { g_default_prec.store(p); }

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval(o) {}

Interval& Interval::operator=(const Interval& o) {
  if (this == &o) return *this;
  if (prec_ != o.prec_) {
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
  }
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  if (this != &o && prec_ == o.prec_) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  return *this = static_cast<const Interval&>(o);
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_long(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(const std::string& s, mpfr_prec_t prec) {
  std::string digits;
  long scale = 0;
  bool after = false;
  for (char ch : s) {
    if (ch == '.') {
      after = true;
      continue;
    }
    digits.push_back(ch);
    if (after) ++scale;
  }
  mpz_class num(digits, 10);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
  mpq_class q(num, den);
  q.canonicalize();
  return from_mpq(q, prec);
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

double Interval::mid_d() const { return 0.5 * (lo_d() + hi_d()); }

double Interval::width_d() const {
  Tmp w(prec_);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = join_prec(a, b);
  Interval r(p);
  const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
  const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
  Tmp t(p);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.v, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing 0");
  Interval inv(b.prec());
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval Interval::sqr() const {
  Interval r = abs();
  Interval out(prec_);
  mpfr_sqr(out.lo_, r.lo_, MPFR_RNDD);
  mpfr_sqr(out.hi_, r.hi_, MPFR_RNDU);
  return out;
}

Interval Interval::abs() const {
  Interval r(prec_);
  if (mpfr_sgn(lo_) >= 0) {
    r = *this;
  } else if (mpfr_sgn(hi_) <= 0) {
    r = -*this;
  } else {
    mpfr_set_zero(r.lo_, 1);
    if (mpfr_cmpabs(lo_, hi_) > 0)
      mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    else
      mpfr_set(r.hi_, hi_, MPFR_RNDU);
  }
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw std::domain_error("sqrt of a negative interval");
  Interval r(prec_);
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of an interval that is not positive");
  Interval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(long e) const {
  if (e < 0) return from_long(1, prec_) / pow(-e);
  Interval result = from_long(1, prec_);
  Interval base = *this;
  // Even powers are monotone in |x|, odd powers in x.
  if (e % 2 == 0) base = abs();
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::string Interval::str(int digits) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "[%.*RDg, %.*RUg]", digits, lo_, digits, hi_);
  return buf;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_max(r.mlo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(r.mhi(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

namespace {

// Reduce a point 2*pi*num/den to an enclosure, then use |f(x)-f(m)| <= |x-m|
// for f = cos, sin around the midpoint m.
Interval trig_2pi(long num, long den, mpfr_prec_t prec, bool use_cos) {
  long n = num % den;
  if (n < 0) n += den;
  Interval x = Interval::pi(prec + 16) * Interval::from_mpq(mpq_class(2 * n, den), prec + 16);
  Tmp mid(prec + 16), rad(prec + 16), t(prec + 16);
  mpfr_add(mid.v, x.lo(), x.hi(), MPFR_RNDN);
  mpfr_div_2ui(mid.v, mid.v, 1, MPFR_RNDN);
  mpfr_sub(rad.v, x.hi(), mid.v, MPFR_RNDU);
  mpfr_sub(t.v, mid.v, x.lo(), MPFR_RNDU);
  mpfr_max(rad.v, rad.v, t.v, MPFR_RNDU);
  Interval r(prec);
  if (use_cos) {
    mpfr_cos(t.v, mid.v, MPFR_RNDD);
    mpfr_sub(r.mlo(), t.v, rad.v, MPFR_RNDD);
    mpfr_cos(t.v, mid.v, MPFR_RNDU);
    mpfr_add(r.mhi(), t.v, rad.v, MPFR_RNDU);
  } else {
    mpfr_sin(t.v, mid.v, MPFR_RNDD);
    mpfr_sub(r.mlo(), t.v, rad.v, MPFR_RNDD);
    mpfr_sin(t.v, mid.v, MPFR_RNDU);
    mpfr_add(r.mhi(), t.v, rad.v, MPFR_RNDU);
  }
  if (mpfr_cmp_si(r.lo(), -1) < 0) mpfr_set_si(r.mlo(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(r.hi(), 1) > 0) mpfr_set_si(r.mhi(), 1, MPFR_RNDU);
  return r;
}

}  // namespace

Interval cos_2pi(long num, long den, mpfr_prec_t prec) {
  long n = ((num % den) + den) % den;
  if (4 * n == den || 4 * n == 3 * den) return Interval::from_long(0, prec);
  if (n == 0) return Interval::from_long(1, prec);
  if (2 * n == den) return Interval::from_long(-1, prec);
  return trig_2pi(num, den, prec, true);
}

Interval sin_2pi(long num, long den, mpfr_prec_t prec) {
  long n = ((num % den) + den) % den;
  if (n == 0 || 2 * n == den) return Interval::from_long(0, prec);
  if (4 * n == den) return Interval::from_long(1, prec);
  if (4 * n == 3 * den) return Interval::from_long(-1, prec);
  return trig_2pi(num, den, prec, false);
}

}  // namespace runge
