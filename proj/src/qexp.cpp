#include "runge/qexp.hpp"

#include <algorithm>

#include "runge/error.hpp"

namespace runge {

QExp::QExp(int level, int width, long start, long prec, std::vector<CycNum> coeffs)
    : N_(level), w_(width), start_(start), prec_(prec), c_(std::move(coeffs)) {
  if (width < 1 || level % width != 0) throw InputError("series width must divide the level");
  if (start > prec) throw InputError("series start exceeds precision");
  for (const auto& c : c_)
    if (c.level() != level) throw InputError("coefficient level mismatch");
  if (!exact()) {
    size_t want = static_cast<size_t>(prec - start);
    if (c_.size() > want) c_.resize(want);
    while (c_.size() < want) c_.emplace_back(level);
  }
  trim();
}

void QExp::trim() {
  if (!exact()) return;
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QExp QExp::zero(int level, int width, long prec) {
  return QExp(level, width, std::min(0L, prec), prec, {});
}

QExp QExp::monomial(int level, int width, long exponent, const CycNum& c, long prec) {
  if (exponent >= prec) return QExp(level, width, prec, prec, {});
  return QExp(level, width, exponent, prec, {c});
}

QExp QExp::from_integers(int level, int width, long start, long prec,
                         const std::vector<mpz_class>& c) {
  std::vector<CycNum> cs;
  long n = prec >= kExact ? static_cast<long>(c.size()) : std::min<long>(c.size(), prec - start);
  cs.reserve(n);
  for (long i = 0; i < n; ++i) cs.emplace_back(level, mpq_class(c[i]));
  return QExp(level, width, start, prec, std::move(cs));
}

CycNum QExp::coeff(long n) const {
  if (n >= prec_) throw PrecisionError("coefficient beyond series precision");
  if (n < start_) return CycNum(N_);
  size_t i = static_cast<size_t>(n - start_);
  if (i < c_.size()) return c_[i];
  return CycNum(N_);
}

QExp QExp::rewidth(int new_width) const {
  if (new_width == w_) return *this;
  if (new_width % w_ != 0 || N_ % new_width != 0)
    throw InputError("rewidth: new width must be a multiple of the old one dividing N");
  long r = new_width / w_;
  long np = exact() ? kExact : prec_ * r;
  std::vector<CycNum> cs(c_.empty() ? 0 : (c_.size() - 1) * r + 1, CycNum(N_));
  for (size_t i = 0; i < c_.size(); ++i) cs[i * r] = c_[i];
  return QExp(N_, new_width, start_ * r, np, std::move(cs));
}

QExp QExp::truncated(long new_prec) const {
  if (new_prec >= prec_) return *this;
  long s = std::min(start_, new_prec);
  std::vector<CycNum> cs;
  for (long n = s; n < new_prec; ++n) cs.push_back(coeff(n));
  return QExp(N_, w_, s, new_prec, std::move(cs));
}

static void common_width(const QExp& a, const QExp& b, QExp& x, QExp& y) {
  if (a.level() != b.level()) throw InputError("series level mismatch");
  if (a.width() == b.width()) {
    x = a;
    y = b;
  } else {
    x = a.rewidth(a.level());
    y = b.rewidth(b.level());
  }
}

QExp QExp::operator+(const QExp& o) const {
  QExp a, b;
  common_width(*this, o, a, b);
  long s = std::min(a.start_, b.start_);
  long p = std::min(a.prec_, b.prec_);
  long end = p;
  if (p >= kExact) end = std::max(a.start_ + static_cast<long>(a.c_.size()),
                                  b.start_ + static_cast<long>(b.c_.size()));
  std::vector<CycNum> cs;
  for (long n = s; n < end; ++n) cs.push_back(a.coeff(n) + b.coeff(n));
  if (s > p) s = p;
  return QExp(N_, a.w_, s, p, std::move(cs));
}

QExp QExp::operator-() const {
  std::vector<CycNum> cs;
  for (const auto& c : c_) cs.push_back(-c);
  return QExp(N_, w_, start_, prec_, std::move(cs));
}

QExp QExp::operator-(const QExp& o) const { return *this + (-o); }

QExp QExp::operator*(const QExp& o) const {
  QExp a, b;
  common_width(*this, o, a, b);
  long s = a.start_ + b.start_;
  long p;
  if (a.exact() && b.exact())
    p = kExact;
  else if (a.exact())
    p = b.prec_ + a.start_;
  else if (b.exact())
    p = a.prec_ + b.start_;
  else
    p = std::min(a.prec_ + b.start_, b.prec_ + a.start_);
  long len;
  if (p >= kExact)
    len = a.c_.empty() || b.c_.empty() ? 0 : static_cast<long>(a.c_.size() + b.c_.size() - 1);
  else
    len = std::max(0L, p - s);
  std::vector<CycNum> cs(len, CycNum(N_));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (static_cast<long>(i) >= len) break;
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size() && static_cast<long>(i + j) < len; ++j) {
      if (b.c_[j].is_zero()) continue;
      cs[i + j] += a.c_[i] * b.c_[j];
    }
  }
  if (s > p) s = p;
  return QExp(N_, a.w_, s, p, std::move(cs));
}

QExp QExp::scaled(const CycNum& x) const {
  std::vector<CycNum> cs;
  for (const auto& c : c_) cs.push_back(c * x);
  return QExp(N_, w_, start_, prec_, std::move(cs));
}

bool QExp::agrees_with(const QExp& o) const {
  QExp a, b;
  common_width(*this, o, a, b);
  long p = std::min(a.prec_, b.prec_);
  long s = std::min(a.start_, b.start_);
  long end = p;
  if (p >= kExact) end = std::max(a.start_ + static_cast<long>(a.c_.size()),
                                  b.start_ + static_cast<long>(b.c_.size()));
  for (long n = s; n < end; ++n)
    if (a.coeff(n) != b.coeff(n)) return false;
  return true;
}

bool QExp::is_zero_to_precision() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

QExp series_arith(const QExp& a, const QExp& b, SeriesOp op) {
  return op == SeriesOp::add ? a + b : a * b;
}

std::optional<long> vanishing_order(const QExp& f) {
  for (size_t i = 0; i < f.coeffs().size(); ++i)
    if (!f.coeffs()[i].is_zero()) return f.start() + static_cast<long>(i);
  if (f.exact()) return std::nullopt;
  throw PrecisionError("vanishing order undetermined at this precision");
}

std::vector<mpz_class> eta_power_coeffs(long a, long count) {
  std::vector<mpz_class> f(std::max(count, 1L), 0);
  // Euler's pentagonal theorem for prod (1 - q^n).
  f[0] = 1;
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (e1 >= count) break;
    int sgn = (k % 2) ? -1 : 1;
    f[e1] += sgn;
    if (e2 < count) f[e2] += sgn;
  }
  std::vector<long> nz;
  for (long k = 1; k < count; ++k)
    if (f[k] != 0) nz.push_back(k);
  std::vector<mpz_class> g(std::max(count, 1L), 0);
  g[0] = 1;
  mpz_class acc;
  for (long n = 1; n < count; ++n) {
    acc = 0;
    for (long k : nz) {
      if (k > n) break;
      acc += ((a + 1) * k - n) * f[k] * g[n - k];
    }
    mpz_divexact_ui(g[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }
  g.resize(count);
  return g;
}

std::vector<mpz_class> delta_power_coeffs(long m, long count) {
  std::vector<mpz_class> out(std::max(count, 0L), 0);
  if (count <= m) return out;
  auto e = eta_power_coeffs(24 * m, count - m);
  for (long n = m; n < count; ++n) out[n] = e[n - m];
  return out;
}

std::vector<mpz_class> e4_coeffs(long count) {
  std::vector<mpz_class> out(std::max(count, 0L), 0);
  if (count > 0) out[0] = 1;
  for (long d = 1; d < count; ++d)
    for (long n = d; n < count; n += d) out[n] += 240 * mpz_class(d) * d * d;
  return out;
}

QExp delta_power(long m, long prec, int level) {
  auto c = delta_power_coeffs(m, prec);
  std::vector<mpz_class> tail(c.begin() + std::min<long>(m, prec), c.end());
  return QExp::from_integers(level, 1, std::min(m, prec), prec, tail);
}

QExp h_series(long prec, int level) {
  return QExp::from_integers(level, 1, 0, prec, eta_power_coeffs(-24, prec));
}

QExp j_series(long prec, int level) {
  // J = q^{-1} E_4^3 h
  long cnt = prec + 1;
  auto e4 = e4_coeffs(cnt);
  auto h = eta_power_coeffs(-24, cnt);
  std::vector<mpz_class> e8(cnt, 0), e12(cnt, 0), r(cnt, 0);
  for (long i = 0; i < cnt; ++i)
    for (long j = 0; i + j < cnt; ++j) e8[i + j] += e4[i] * e4[j];
  for (long i = 0; i < cnt; ++i)
    for (long j = 0; i + j < cnt; ++j) e12[i + j] += e8[i] * e4[j];
  for (long i = 0; i < cnt; ++i)
    for (long j = 0; i + j < cnt; ++j) r[i + j] += e12[i] * h[j];
  return QExp::from_integers(level, 1, -1, prec, r);
}

}  // namespace runge
