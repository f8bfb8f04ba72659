#include "runge/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "runge/error.hpp"

namespace runge {

namespace {

using IntPoly = std::vector<long>;

// Exact division of integer polynomials with monic divisor.
IntPoly poly_div_exact(IntPoly a, const IntPoly& b) {
  size_t db = b.size() - 1;
  IntPoly q(a.size() - db, 0);
  for (size_t i = a.size(); i-- > db;) {
    long c = a[i];
    q[i - db] = c;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

IntPoly cyclotomic_poly_of(int n, std::map<int, IntPoly>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, cyclotomic_poly_of(d, memo));
  memo[n] = p;
  return p;
}

}  // namespace

int euler_phi(int N) {
  int r = 0;
  for (int k = 0; k < std::max(N, 1); ++k)
    if (std::gcd(k, N) == 1) ++r;
  return r;
}

CyclotomicField::CyclotomicField(int N) : N_(N) {
  if (N < 1) throw InputError("cyclotomic level must be positive");
  std::map<int, IntPoly> memo;
  poly_ = cyclotomic_poly_of(N, memo);
  phi_ = static_cast<int>(poly_.size()) - 1;
  powers_.assign(N, std::vector<long>(phi_, 0));
  std::vector<long> cur(phi_, 0);
  cur[0] = 1;
  for (int e = 0; e < N; ++e) {
    powers_[e] = cur;
    // multiply by x and reduce
    long top = cur[phi_ - 1];
    for (int i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (int i = 0; i < phi_; ++i) cur[i] -= top * poly_[i];
  }
  for (int k = 0; k < N; ++k)
    if (std::gcd(k, N) == 1) units_.push_back(k);
  if (N == 1) units_ = {0};
  for (int k : units_)
    if (N <= 2 || k < N - k) places_.push_back(k);
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int N) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const CyclotomicField> F(new CyclotomicField(N));
  cache[N] = F;
  return F;
}

bool CyclotomicField::is_unit(long d) const {
  long r = ((d % N_) + N_) % N_;
  return std::gcd(r, static_cast<long>(N_)) == 1 || N_ == 1;
}

std::vector<InfinitePlace> infinite_places(int N) {
  std::vector<InfinitePlace> out;
  for (int k : CyclotomicField::get(N)->places()) out.push_back({N, k});
  return out;
}

void reduce_int_poly(const CyclotomicField& F, std::vector<mpz_class>& raw, mpz_class* out) {
  int phi = F.degree();
  for (int i = 0; i < phi; ++i) out[i] = 0;
  for (size_t e = 0; e < raw.size(); ++e) {
    if (raw[e] == 0) continue;
    if (static_cast<int>(e) < phi) {
      out[e] += raw[e];
    } else {
      const auto& p = F.power(static_cast<int>(e));
      for (int i = 0; i < phi; ++i)
        if (p[i] != 0) out[i] += raw[e] * p[i];
    }
  }
}

CycNum::CycNum(int N) : N_(N), F_(CyclotomicField::get(N)), c_(F_->degree()) {}

CycNum::CycNum(int N, const mpq_class& c) : CycNum(N) {
  c_[0] = c;
  refresh();
}

CycNum::CycNum(int N, std::vector<mpq_class> coeffs) : CycNum(N) {
  int phi = F_->degree();
  if (static_cast<int>(coeffs.size()) <= phi) {
    for (size_t i = 0; i < coeffs.size(); ++i) c_[i] = coeffs[i];
  } else {
    // reduce x^e through the power table (x^e = x^(e mod N) since Phi_N | x^N - 1)
    for (size_t e = 0; e < coeffs.size(); ++e) {
      if (coeffs[e] == 0) continue;
      const auto& p = F_->power(static_cast<int>(e % N));
      for (int i = 0; i < phi; ++i)
        if (p[i] != 0) c_[i] += coeffs[e] * p[i];
    }
  }
  refresh();
}

CycNum CycNum::zeta_power(int N, long e) {
  CycNum r(N);
  const auto& p = r.F_->power(static_cast<int>(((e % N) + N) % N));
  for (int i = 0; i < r.F_->degree(); ++i) r.c_[i] = p[i];
  r.refresh();
  return r;
}

void CycNum::refresh() {
  integral_ = true;
  for (auto& c : c_) {
    c.canonicalize();
    if (c.get_den() != 1) integral_ = false;
  }
}

bool CycNum::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool CycNum::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class CycNum::rational_value() const {
  if (!is_rational()) throw Error("cyclotomic element is not rational");
  return c_.empty() ? mpq_class(0) : c_[0];
}

static void check_level(const CycNum& a, const CycNum& b) {
  if (a.level() != b.level()) throw InputError("cyclotomic level mismatch");
}

CycNum CycNum::operator+(const CycNum& o) const {
  check_level(*this, o);
  CycNum r(N_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  r.refresh();
  return r;
}

CycNum CycNum::operator-(const CycNum& o) const {
  check_level(*this, o);
  CycNum r(N_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  r.refresh();
  return r;
}

CycNum CycNum::operator-() const {
  CycNum r(N_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
  r.integral_ = integral_;
  return r;
}

CycNum CycNum::operator*(const CycNum& o) const {
  check_level(*this, o);
  int phi = F_->degree();
  std::vector<mpq_class> raw(2 * phi - 1);
  for (int i = 0; i < phi; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < phi; ++j)
      if (o.c_[j] != 0) raw[i + j] += c_[i] * o.c_[j];
  }
  return CycNum(N_, std::move(raw));
}

CycNum CycNum::scaled(const mpq_class& s) const {
  CycNum r(N_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
  r.refresh();
  return r;
}

CycNum CycNum::pow(unsigned long e) const {
  CycNum result(N_, mpq_class(1));
  CycNum base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(zeta_N)");
  // x^{-1} = (prod_{d != 1} sigma_d x) / Norm(x)
  CycNum prod(N_, mpq_class(1));
  for (int d : F_->units())
    if (d != 1 % std::max(N_, 1)) prod = prod * galois_apply(d, *this);
  CycNum nrm = prod * *this;
  mpq_class n = nrm.rational_value();
  return prod.scaled(1 / n);
}

CycNum CycNum::operator/(const CycNum& o) const {
  check_level(*this, o);
  return *this * o.inverse();
}

bool CycNum::operator==(const CycNum& o) const { return N_ == o.N_ && c_ == o.c_; }

mpq_class CycNum::l1_norm() const {
  mpq_class s = 0;
  for (const auto& c : c_) s += abs(c);
  return s;
}

std::string CycNum::str() const {
  std::ostringstream os;
  bool any = false;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (any) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    mpq_class a = abs(c_[i]);
    if (i == 0 || a != 1) os << a;
    if (i > 0) os << (a != 1 ? "*" : "") << "z" << (i > 1 ? "^" + std::to_string(i) : "");
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op) {
  switch (op) {
    case CycOp::add: return a + b;
    case CycOp::sub: return a - b;
    case CycOp::mul: return a * b;
    case CycOp::div: return a / b;
  }
  throw Error("unknown op");
}

CycNum galois_apply(long d, const CycNum& x) {
  const auto& F = x.field();
  int N = x.level();
  if (!F.is_unit(d)) throw InputError("galois_apply: d is not a unit mod N");
  long dd = ((d % N) + N) % N;
  std::vector<mpq_class> raw(std::max(N, 1));
  const auto& c = x.coeffs();
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) raw[(i * dd) % N] += c[i];
  if (N <= 2) return x;
  // raw has length N > phi(N); the constructor reduces it mod Phi_N.
  return CycNum(N, std::move(raw));
}

Interval abs_at_place(const CycNum& x, int k, mpfr_prec_t prec_bits) {
  int N = x.level();
  Interval re(prec_bits), im(prec_bits);
  const auto& c = x.coeffs();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Interval ci = Interval::from_mpq(c[i], prec_bits);
    re = re + ci * cos_2pi(static_cast<long>(i) * k, N, prec_bits);
    im = im + ci * sin_2pi(static_cast<long>(i) * k, N, prec_bits);
  }
  return (re.sqr() + im.sqr()).sqrt();
}

Interval abs_at_place(const CycNum& x, const InfinitePlace& v, mpfr_prec_t prec_bits) {
  return abs_at_place(x, v.embedding_exponent, prec_bits);
}

mpq_class field_norm(const CycNum& x) {
  CycNum prod(x.level(), mpq_class(1));
  for (int d : x.field().units()) prod = prod * galois_apply(d, x);
  return prod.rational_value();
}

std::vector<int> unit_subgroup(int N, const std::vector<int>& gens) {
  std::set<int> S = {1 % N};
  std::vector<int> frontier = {1 % N};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int a : frontier)
      for (int g : gens) {
        int b = static_cast<int>((static_cast<long>(a) * (((g % N) + N) % N)) % N);
        if (S.insert(b).second) next.push_back(b);
      }
    frontier = std::move(next);
  }
  return {S.begin(), S.end()};
}

CycNum norm_to_subfield(const CycNum& x, const std::vector<int>& D, const std::vector<int>& H) {
  int N = x.level();
  std::set<int> Hs(H.begin(), H.end());
  std::set<int> covered;
  CycNum prod(N, mpq_class(1));
  for (int d : D) {
    if (covered.count(d)) continue;
    for (int h : Hs) covered.insert(static_cast<int>((static_cast<long>(d) * h) % N));
    prod = prod * galois_apply(d, x);
  }
  return prod;
}

CycNum norm_to_subfield(const CycNum& x, const std::vector<int>& D) {
  std::vector<int> H;
  for (int d : D)
    if (galois_apply(d, x) == x) H.push_back(d);
  return norm_to_subfield(x, D, H);
}

}  // namespace runge
