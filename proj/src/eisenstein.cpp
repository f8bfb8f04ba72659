#include "runge/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "runge/error.hpp"

namespace runge {

EisIndex make_index(long a, long b, int N) {
  long x = a % N, y = b % N;
  if (x < 0) x += N;
  if (y < 0) y += N;
  return {static_cast<int>(x), static_cast<int>(y)};
}

EisIndex negate_index(const EisIndex& x, int N) { return make_index(-x.a, -x.b, N); }

EisIndex star_on_index(const EisIndex& al, const Mat2& A, int N) {
  return make_index(static_cast<long>(al.a) * A.a + static_cast<long>(al.b) * A.c,
                    static_cast<long>(al.a) * A.b + static_cast<long>(al.b) * A.d, N);
}

CycNum eisenstein_constant(int N, const EisIndex& al) {
  if (al.a != 0) return CycNum(N, mpq_class(1, 2) - mpq_class(al.a, N));
  if (al.b == 0) return CycNum(N);
  CycNum one(N, mpq_class(1));
  CycNum z = CycNum::zeta_power(N, al.b);
  return ((one + z) / (one - z)).scaled(mpq_class(1, 2));
}

// Raw exponent vector (powers of zeta, length N) of the q_N^t coefficient.
static void nonconstant_raw(int N, const EisIndex& al, long t, std::vector<long>& raw) {
  std::fill(raw.begin(), raw.end(), 0);
  for (long m = 1; m <= t; ++m) {
    if (t % m) continue;
    long n = t / m;
    long r = m % N;
    if (r == al.a) raw[(static_cast<long>(al.b) * n) % N] += 1;
    if ((r + al.a) % N == 0) raw[((N - al.b) % N * n) % N] -= 1;
  }
}

QExp eisenstein_qexp(int N, const EisIndex& al, long prec) {
  if (prec < 1) throw InputError("precision must be at least 1");
  std::vector<CycNum> cs;
  cs.push_back(eisenstein_constant(N, al));
  std::vector<long> raw(N);
  for (long t = 1; t < prec; ++t) {
    nonconstant_raw(N, al, t, raw);
    std::vector<mpq_class> q(raw.begin(), raw.end());
    cs.emplace_back(N, std::move(q));
  }
  return QExp(N, N, 0, prec, std::move(cs));
}

IntSeries::IntSeries(int level, long precision)
    : N(level), phi(CyclotomicField::get(level)->degree()), prec(precision),
      c(static_cast<size_t>(precision * phi)) {}

bool IntSeries::zero_at(long n) const {
  const mpz_class* p = at(n);
  for (int i = 0; i < phi; ++i)
    if (p[i] != 0) return false;
  return true;
}

CycNum IntSeries::coeff(long n) const {
  const mpz_class* p = at(n);
  return CycNum(N, std::vector<mpq_class>(p, p + phi));
}

QExp IntSeries::to_qexp() const {
  std::vector<CycNum> cs;
  cs.reserve(prec);
  for (long n = 0; n < prec; ++n) cs.push_back(coeff(n));
  return QExp(N, N, 0, prec, std::move(cs));
}

bool IntSeries::is_zero() const {
  for (const auto& x : c)
    if (x != 0) return false;
  return true;
}

IntSeries IntSeries::truncated(long p) const {
  IntSeries r(N, std::min(p, prec));
  std::copy(c.begin(), c.begin() + r.prec * phi, r.c.begin());
  return r;
}

IntSeries int_mul(const IntSeries& x, const IntSeries& y, long p) {
  if (x.N != y.N) throw InputError("series level mismatch");
  p = std::min({p, x.prec, y.prec});
  int phi = x.phi;
  int R = 2 * phi - 1;
  const auto& F = *CyclotomicField::get(x.N);
  std::vector<long> nx, ny;
  for (long n = 0; n < p; ++n) {
    if (!x.zero_at(n)) nx.push_back(n);
    if (!y.zero_at(n)) ny.push_back(n);
  }
  thread_local std::vector<mpz_class> raw;
  if (raw.size() < static_cast<size_t>(p * R)) raw.resize(p * R);
  for (long i = 0; i < p * R; ++i) raw[i] = 0;
  for (long i : nx) {
    const mpz_class* a = x.at(i);
    for (long j : ny) {
      if (i + j >= p) break;
      const mpz_class* b = y.at(j);
      mpz_class* out = raw.data() + (i + j) * R;
      for (int r = 0; r < phi; ++r) {
        if (a[r] == 0) continue;
        for (int s = 0; s < phi; ++s)
          mpz_addmul(out[r + s].get_mpz_t(), a[r].get_mpz_t(), b[s].get_mpz_t());
      }
    }
  }
  IntSeries z(x.N, p);
  std::vector<mpz_class> block(R);
  for (long n = 0; n < p; ++n) {
    for (int e = 0; e < R; ++e) block[e] = raw[n * R + e];
    reduce_int_poly(F, block, z.at(n));
  }
  return z;
}

void int_addmul(IntSeries& acc, const IntSeries& x, const std::vector<mpz_class>& s) {
  if (acc.N != x.N) throw InputError("series level mismatch");
  int phi = x.phi;
  int R = 2 * phi - 1;
  const auto& F = *CyclotomicField::get(x.N);
  std::vector<mpz_class> block(R);
  std::vector<mpz_class> red(phi);
  long p = std::min(acc.prec, x.prec);
  for (long n = 0; n < p; ++n) {
    if (x.zero_at(n)) continue;
    for (auto& b : block) b = 0;
    const mpz_class* a = x.at(n);
    for (int r = 0; r < phi; ++r)
      for (int t = 0; t < phi; ++t)
        if (s[t] != 0) mpz_addmul(block[r + t].get_mpz_t(), a[r].get_mpz_t(), s[t].get_mpz_t());
    reduce_int_poly(F, block, red.data());
    mpz_class* o = acc.at(n);
    for (int r = 0; r < phi; ++r) o[r] += red[r];
  }
}

void int_add(IntSeries& acc, const IntSeries& x) {
  long p = std::min(acc.prec, x.prec);
  for (long i = 0; i < p * x.phi; ++i) acc.c[i] += x.c[i];
}

void int_scale(IntSeries& x, const mpz_class& s) {
  for (auto& v : x.c) v *= s;
}

namespace {

struct CacheEntry {
  std::shared_ptr<const IntSeries> series;
};

std::mutex g_cache_mu;
std::map<std::tuple<int, int, int>, std::shared_ptr<const IntSeries>> g_cache;

std::shared_ptr<const IntSeries> build_scaled(int N, const EisIndex& al, long prec) {
  auto s = std::make_shared<IntSeries>(N, prec);
  CycNum c0 = eisenstein_constant(N, al).scaled(mpq_class(2 * N));
  if (!c0.integral()) throw Error("scaled Eisenstein constant term is not integral");
  for (int i = 0; i < s->phi; ++i) s->at(0)[i] = c0.coeffs()[i].get_num();
  const auto& F = *CyclotomicField::get(N);
  std::vector<long> raw(N);
  std::vector<mpz_class> block(N);
  for (long t = 1; t < prec; ++t) {
    nonconstant_raw(N, al, t, raw);
    for (int e = 0; e < N; ++e) block[e] = 2L * N * raw[e];
    reduce_int_poly(F, block, s->at(t));
  }
  return s;
}

}  // namespace

std::shared_ptr<const IntSeries> scaled_eisenstein(int N, const EisIndex& al, long prec) {
  EisIndex key = al;
  EisIndex neg = negate_index(al, N);
  bool flip = neg < al;
  if (flip) key = neg;
  std::shared_ptr<const IntSeries> base;
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = g_cache.find({N, key.a, key.b});
    if (it != g_cache.end() && it->second->prec >= prec) base = it->second;
  }
  if (!base) {
    base = build_scaled(N, key, prec);
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto& slot = g_cache[{N, key.a, key.b}];
    if (!slot || slot->prec < base->prec) slot = base;
  }
  if (!flip) return base;
  auto neg_series = std::make_shared<IntSeries>(base->truncated(prec));
  for (auto& v : neg_series->c) v = -v;
  return neg_series;
}

void clear_eisenstein_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.clear();
}

IntSeries scaled_product(int N, const std::vector<EisIndex>& indices, long prec) {
  if (indices.empty()) {
    IntSeries one(N, prec);
    if (prec > 0) one.at(0)[0] = 1;
    return one;
  }
  IntSeries acc = scaled_eisenstein(N, indices[0], prec)->truncated(prec);
  for (size_t i = 1; i < indices.size(); ++i) {
    if (acc.is_zero()) break;
    acc = int_mul(acc, *scaled_eisenstein(N, indices[i], prec), prec);
  }
  return acc;
}

namespace {

std::complex<double> eval_truncated(int N, const EisIndex& al, std::complex<double> tau, long prec) {
  const double two_pi = 2.0 * M_PI;
  std::complex<double> zeta = std::polar(1.0, two_pi / N);
  std::complex<double> qN = std::exp(std::complex<double>(0, two_pi / N) * tau);
  auto to_c = [&](const CycNum& x) {
    std::complex<double> s = 0, zp = 1;
    for (const auto& c : x.coeffs()) {
      s += c.get_d() * zp;
      zp *= zeta;
    }
    return s;
  };
  std::complex<double> total = to_c(eisenstein_constant(N, al));
  std::vector<long> raw(N);
  std::complex<double> qp = 1;
  for (long t = 1; t < prec; ++t) {
    qp *= qN;
    nonconstant_raw(N, al, t, raw);
    std::complex<double> c = 0;
    for (int e = 0; e < N; ++e)
      if (raw[e]) c += static_cast<double>(raw[e]) * std::pow(zeta, e);
    total += c * qp;
  }
  return total;
}

// |c_t| <= 2 d(t) <= 2t, so the tail past prec is at most 2 sum_{t>=P} t r^t.
double tail_bound(double r, long P) {
  if (r >= 1) return INFINITY;
  double rp = std::pow(r, static_cast<double>(P));
  return 2 * rp * (P / (1 - r) + r / ((1 - r) * (1 - r)));
}

}  // namespace

double transformation_oracle(int N, const EisIndex& al, const long g[4],
                             std::complex<double> tau, long prec, double tol) {
  if (g[0] * g[3] - g[1] * g[2] != 1) throw InputError("gamma must lie in SL2(Z)");
  std::complex<double> ctd = static_cast<double>(g[2]) * tau + static_cast<double>(g[3]);
  std::complex<double> gtau = (static_cast<double>(g[0]) * tau + static_cast<double>(g[1])) / ctd;
  double r1 = std::exp(-2 * M_PI * gtau.imag() / N);
  double r2 = std::exp(-2 * M_PI * tau.imag() / N);
  double tail = tail_bound(r1, prec) / std::abs(ctd) + tail_bound(r2, prec);
  if (!(tail < tol / 10)) throw PrecisionError("truncation too short for the requested tolerance");
  Mat2 gm = mat_reduce(g[0], g[1], g[2], g[3], N);
  EisIndex ag = star_on_index(al, gm, N);
  std::complex<double> lhs = eval_truncated(N, al, gtau, prec) / ctd;
  std::complex<double> rhs = eval_truncated(N, ag, tau, prec);
  return std::abs(lhs - rhs);
}

}  // namespace runge
