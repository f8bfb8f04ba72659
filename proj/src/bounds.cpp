#include "runge/bounds.hpp"

#include <cmath>
#include <random>

#include "runge/cyclotomic.hpp"
#include "runge/eisenstein.hpp"
#include "runge/error.hpp"
#include "runge/qexp.hpp"

namespace runge {

namespace {

Interval L(long v) { return Interval::from_long(v); }
Interval dec(const char* s) { return Interval::from_decimal(s); }
Interval logl(long v) { return L(v).log(); }
Interval log_m(long m) { return m == 1 ? L(0) : logl(m); }

}  // namespace

bool BoundReport::all_ok() const {
  for (const auto& c : checks)
    if (!c.second) return false;
  return true;
}

Interval log_beta(int N, long m, long mu) {
  Interval l2 = logl(2), l45 = dec("4.5").log(), lN = logl(N), lm = log_m(m);
  Interval inner = L(3) * l2 + L(36 * m) * l45 + L(108 * m + 15) * lN + L(72 * m + 1) * lm;
  return l2 + L(m * mu + 1) * inner + L(12 * m) * l45 + L(36 * m + 4) * lN;
}

Interval log_C(int N, long m) {
  return dec("96.6").log() + L(24 * m) * dec("0.1").log() + L(90 * m + 4) * logl(N);
}

Interval log_Cprime(int N, long m) {
  return dec("22.16").log() + L(144 * m + 7) * logl(N) + L(24 * m) * dec("0.024").log();
}

Interval log_calB(int N, long m, long mu) {
  long k = 12 * m;
  Interval inner = L(3) * logl(2) + L(3 * k) * dec("4.5").log() + L(9 * k + 15) * logl(N) +
                   L(6 * k + 1) * log_m(m);
  return L(m * mu + 1) * inner;
}

Interval log_alpha_norm(int N, long m, long absG) {
  long k = 12 * m;
  return logl(2) + logl(absG) + L(k) * dec("4.5").log() + L(3 * k) * logl(N) + L(2 * k) * log_m(m);
}

Interval bilu_parent_bound(int N, long absG, int s) {
  if (s < 1) throw InputError("|S| must be at least 1");
  Interval ls = logl(s);
  Interval half = Interval::from_mpq(mpq_class(s, 2) + 1);
  Interval base = Interval::from_mpq(mpq_class(static_cast<long>(N) * N * absG, 2));
  Interval lg = (half * ls + L(s) * base.log()).exp();
  return L(36) * lg * logl(2L * N);
}

BoundReport constants(const BoundInputs& in) {
  if (in.N <= 2) throw InputError("N>2 required");
  if (in.m < 1 || in.mu < 1) throw InputError("m and mu must be positive");
  BoundReport r;
  r.in = in;
  r.log_beta = log_beta(in.N, in.m, in.mu);
  r.log_C = log_C(in.N, in.m);
  r.log_Cprime = log_Cprime(in.N, in.m);
  r.log_calB = log_calB(in.N, in.m, in.mu);
  r.log_alpha_norm = log_alpha_norm(in.N, in.m, in.absG);
  r.bilu_parent = bilu_parent_bound(in.N, in.absG, in.s);
  r.checks.push_back({"C' > C", r.log_C.lt(r.log_Cprime)});
  return r;
}

bool poly_aux_check(long xmax) {
  for (long t = 0; t <= 2 * xmax; ++t) {
    mpq_class x(t, 2);
    mpq_class f = (9 * x * x * x * x + 222 * x * x * x + 1536 * x * x + 2132 * x) / 4;
    mpq_class y = x + 4;
    if (f > 4 * y * y * y * y) return false;
  }
  return true;
}

bool coarse_exact_check(int N) {
  // 4 (N^3/2 + 4)^4 <= N^12  <=>  (N^3 + 8)^4 <= 4 N^12
  mpz_class a = mpz_class(N) * N * N + 8, n12;
  mpz_ui_pow_ui(n12.get_mpz_t(), N, 12);
  return a * a * a * a <= 4 * n12;
}

BoundReport height_bound_chain(const BoundInputs& in) {
  BoundReport r = constants(in);
  long m = in.m, mu = in.mu;
  Interval lN = logl(in.N);
  r.height_exact = L(mu) * (r.log_beta + r.log_Cprime) + logl(3500);
  r.d_exponent = (324 * m + 18) * (m * mu + 1) + (36 * m + 4) + (144 * m + 7);
  r.height_mid = Interval::from_mpz(mpz_class(mu) * r.d_exponent) * lN;
  mpz_class p4 = mpz_class(mu + 4);
  p4 = p4 * p4 * p4 * p4 * 4;
  r.height_poly = Interval::from_mpz(p4) * lN;
  mpz_class n12;
  mpz_ui_pow_ui(n12.get_mpz_t(), in.N, 12);
  r.height_coarse = Interval::from_mpz(n12) * lN;
  r.mid_applicable = mu >= 2 && 12 * (m - 1) <= mu;
  r.checks.push_back({"mu >= 2", mu >= 2});
  r.checks.push_back({"exact <= poly", r.height_exact.le(r.height_poly)});
  r.checks.push_back({"poly <= coarse", r.height_poly.le(r.height_coarse)});
  if (r.mid_applicable) {
    r.checks.push_back({"exact <= mu d log N", r.height_exact.le(r.height_mid)});
    r.checks.push_back({"mu d <= 4(mu+4)^4", mpz_class(mu) * r.d_exponent <= p4});
  }
  long n3 = static_cast<long>(in.N) * in.N * in.N;
  r.checks.push_back({"f(x) <= 4(x+4)^4 on grid", poly_aux_check(n3 / 2 + 1)});
  r.checks.push_back({"4(N^3/2+4)^4 <= N^12", coarse_exact_check(in.N)});
  r.checks.push_back({"trivial bounds", trivial_bounds_hold(in.N, mu, m)});
  return r;
}

namespace {

std::vector<long> divisor_counts(long n) {
  std::vector<long> d(n + 1, 0);
  for (long a = 1; a <= n; ++a)
    for (long b = a; b <= n; b += a) ++d[b];
  return d;
}

}  // namespace

mpz_class sjn(int j, long n) {
  if (j < 1 || n < 1) throw InputError("sjn needs j, n >= 1");
  auto d = divisor_counts(n);
  std::vector<mpz_class> S(n + 1, 0);
  for (long t = 1; t <= n; ++t) S[t] = d[t];
  for (int level = 2; level <= j; ++level) {
    std::vector<mpz_class> T(n + 1, 0);
    for (long t = 1; t <= n; ++t)
      for (long a = 1; a < t; ++a) T[t] += d[a] * S[t - a];
    S = std::move(T);
  }
  return S[n];
}

bool sjn_bound_check(int j, long n) {
  mpz_class s = sjn(j, n);
  Interval ln = logl(n);
  Interval b = L(2) * ((Interval::from_mpq(mpq_class(2 * j - 1, 2)) * ln).exp()) *
               (ln + L(1)).pow(j - 1);
  return Interval::from_mpz(s).le(b);
}

Interval u0(mpfr_prec_t prec) {
  Interval s3 = Interval::from_long(3, prec).sqrt();
  return (-(Interval::pi(prec) * s3)).exp();
}

namespace {

void require_u(const Interval& u) {
  if (!mpfr_lessequal_p(u.hi(), u0(u.prec()).hi())) throw InputError("u exceeds exp(-pi sqrt 3)");
  if (mpfr_sgn(u.lo()) < 0) throw InputError("u must be nonnegative");
}

// u^x for rational x >= 0, u > 0
Interval upow(const Interval& u, const mpq_class& x) {
  if (x == 0) return L(1);
  return (Interval::from_mpq(x) * u.log()).exp();
}

}  // namespace

Interval sum_cn_bound_i(long m, int w, long B, const Interval& u) {
  if (B < 5 * m * w) throw InputError("part (i) needs B >= 5mw");
  require_u(u);
  mpq_class bw(B, w);
  return dec("230.8") * L(w) * upow(u, bw) * Interval::from_mpq(bw).pow(24 * m + 1);
}

Interval sum_cn_bound_ii(long m, int w, long B, const Interval& u) {
  if (B < m * w || B > 5 * m * w) throw InputError("part (ii) needs mw <= B <= 5mw");
  require_u(u);
  return dec("231.6") * L(w) * upow(u, mpq_class(B, w)) * L(5 * m).pow(24 * m + 1);
}

Interval sum_cn_oracle(long m, int w, long B, const Interval& u) {
  require_u(u);
  // Sum terms up to n1, then bound the rest by a geometric series whose ratio
  // ((n+1)/n)^{24m} u^{1/w} is decreasing in n.
  Interval sum = L(0);
  long n = B;
  Interval uw = upow(u, mpq_class(1, w));
  auto term = [&](long t) {
    mpq_class x(t, w);
    Interval c = x >= 1 ? Interval::from_mpq(x).pow(24 * m) : L(1);
    return c * upow(u, x);
  };
  for (;; ++n) {
    sum += term(n);
    if (n >= B + 10 && n > 48 * m * w) {
      Interval ratio = Interval::from_mpq(mpq_class(n + 2, n + 1)).pow(24 * m) * uw;
      if (ratio.lt(dec("0.9"))) {
        Interval tail = term(n + 1) / (L(1) - ratio);
        if (tail.lt(sum * dec("0.000001"))) {
          sum += Interval::hull(L(0), tail);
          return sum;
        }
      }
    }
    if (n > B + 100000) throw PrecisionError("tail sum did not converge");
  }
}

Interval delta_sum_bound_ii(long m, long B, const Interval& u) {
  if (B <= 2 * m) throw InputError("part (ii) needs B > 2m");
  require_u(u);
  return L(463) * u.pow(B) * L(B - 1).pow(6 * m + 1);
}

Interval delta_sum_bound_iii(long m, long B, const Interval& u, long constant) {
  if (B <= m || B > 2 * m) throw InputError("part (iii) needs m < B <= 2m");
  require_u(u);
  return L(constant) * u.pow(B) * L(2 * m).pow(6 * m + 1);
}

Interval delta_sum_oracle(long m, long B, const Interval& u) {
  require_u(u);
  const long cutoff = std::max<long>(B + 60, 200);
  auto a = delta_power_coeffs(m, cutoff);
  Interval sum = L(0);
  for (long n = B; n < cutoff; ++n)
    if (a[n] != 0) sum += Interval::from_mpz(abs(a[n])) * u.pow(n);
  // Cauchy: |a_n| <= M(rho) rho^{-n}, M(rho) <= rho^m prod (1 + rho^n)^{24m}.
  Interval rho = dec("0.5");
  Interval lp = L(0);
  for (long n = 1; n <= 200; ++n) lp += (L(1) + rho.pow(n)).log();
  lp += rho.pow(201) * L(2);  // sum_{n>200} log(1 + rho^n) <= 2 rho^201
  Interval M = rho.pow(m) * (L(24 * m) * lp).exp();
  Interval ratio = u / rho;
  Interval tail = M * ratio.pow(cutoff) / (L(1) - ratio);
  return sum + Interval::hull(L(0), tail);
}

bool delta_coeff_bound_check(long m, long nmax) {
  auto a = delta_power_coeffs(m, nmax + 1);
  for (long n = 2; n <= nmax; ++n) {
    mpz_class b;
    mpz_ui_pow_ui(b.get_mpz_t(), n, 6 * m);
    if (abs(a[n]) > 2 * b) return false;
  }
  return true;
}

Interval h_product() {
  Interval u = u0();
  Interval s = L(0);
  const long K = 60;
  for (long n = 1; n <= K; ++n) s += (L(1) - u.pow(n)).log();
  // -log(1 - x) <= x/(1 - x); sum_{n>K} u^n/(1-u^n) <= u^{K+1} / ((1-u)(1-u^{K+1}))
  Interval uk = u.pow(K + 1);
  Interval tail = uk / ((L(1) - u) * (L(1) - uk));
  Interval lg = -(L(24) * s) + L(24) * Interval::hull(L(0), tail);
  return lg.exp();
}

EisensteinBoundResult eisenstein_coeff_bound_check(int N, int k, int samples, long nmax,
                                                   unsigned long seed) {
  EisensteinBoundResult res;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, N - 1);
  auto places = infinite_places(N);
  auto dn = divisor_counts(nmax);
  Interval n4 = Interval::from_mpq(mpq_class(N, 4));
  long prec = nmax + 1;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2 * N, k);
  for (int s = 0; s < samples; ++s) {
    std::vector<EisIndex> idx;
    for (int i = 0; i < k; ++i) idx.push_back(EisIndex{pick(rng), pick(rng)});
    IntSeries p = scaled_product(N, idx, prec);
    for (long n = 0; n <= nmax; ++n) {
      CycNum a = p.coeff(n).scaled(mpq_class(1, scale));
      Interval bound(Interval::default_prec());
      if (n == 0) {
        bound = n4.pow(k);
      } else {
        Interval ln = logl(n);
        bound = L(2) * (-(ln * dec("0.5"))).exp() * (n4 + L(2 * n) * (ln + L(1))).pow(k);
        if (k == 1) bound = L(2 * dn[n]);
      }
      ++res.checked;
      if (Interval::from_mpq(a.l1_norm()).le(bound)) continue;
      for (const auto& v : places)
        if (!abs_at_place(a, v, 128).le(bound)) {
          ++res.violations;
          break;
        }
    }
  }
  return res;
}

double height_of_rational(const mpq_class& x) {
  mpz_class a = abs(x.get_num()), b = x.get_den();
  mpz_class mx = a > b ? a : b;
  if (mx <= 1) return 0.0;
  return Interval::from_mpz(mx, 64).log().mid_d();
}

bool trivial_bounds_hold(int N, long mu, long m) {
  mpz_class n3 = mpz_class(N) * N * N;
  return 2 * mpz_class(mu) <= n3 && 54 * mpz_class(mu + 1) <= 29 * n3 && 24 * mpz_class(m) <= n3;
}

}  // namespace runge
