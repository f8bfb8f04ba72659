#include "runge/modform_space.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "runge/error.hpp"
#include "runge/parallel.hpp"

namespace runge {

FormEngine::FormEngine(const Gl2Subgroup& G) : N_(G.level()), G_(adjoin_minus_identity(G)) {}

IntSeries FormEngine::combination_at(const std::vector<std::pair<mpz_class, TraceTerm>>& terms,
                                     const Mat2& A, long prec) const {
  const int N = N_;
  // Group the summands by the multiset {beta_i} up to sign; E_{-beta} = -E_beta,
  // and beta = -beta forces E_beta = 0.
  std::map<std::vector<EisIndex>, std::vector<mpz_class>> weights;
  std::vector<EisIndex> key;
  for (const auto& [coef, t] : terms) {
    if (coef == 0) continue;
    for (const auto& g : G_.elements()) {
      Mat2 gA = mat_mul(g, A, N);
      int det = mat_det(gA, N);
      key.clear();
      int sign = 1;
      bool zero = false;
      for (const auto& al : t.indices) {
        EisIndex b = star_on_index(al, gA, N);
        EisIndex nb = negate_index(b, N);
        if (b == nb) {
          zero = true;
          break;
        }
        if (nb < b) {
          b = nb;
          sign = -sign;
        }
        key.push_back(b);
      }
      if (zero) continue;
      std::sort(key.begin(), key.end());
      auto& w = weights[key];
      if (w.empty()) w.assign(N, 0);
      long e = (static_cast<long>(t.zeta_power) * det) % N;
      if (sign > 0)
        w[e] += coef;
      else
        w[e] -= coef;
    }
  }
  IntSeries acc(N, prec);
  const auto& F = *CyclotomicField::get(N);
  std::vector<mpz_class> s(F.degree());
  for (auto& [ks, w] : weights) {
    reduce_int_poly(F, w, s.data());
    if (std::all_of(s.begin(), s.end(), [](const mpz_class& v) { return v == 0; })) continue;
    IntSeries p = scaled_product(N, ks, prec);
    int_addmul(acc, p, s);
  }
  return acc;
}

IntSeries FormEngine::trace_at(const TraceTerm& t, const Mat2& A, long prec) const {
  return combination_at({{mpz_class(1), t}}, A, prec);
}

ModFormExpr::ModFormExpr(int level, int weight, std::vector<std::pair<mpz_class, TraceTerm>> terms)
    : N_(level), k_(weight), terms_(std::move(terms)) {
  for (const auto& [c, t] : terms_)
    if (t.weight() != weight) throw InputError("trace terms of mixed weight");
}

ModFormExpr ModFormExpr::trace(int level, const TraceTerm& t) {
  return ModFormExpr(level, t.weight(), {{mpz_class(1), t}});
}

IntSeries ModFormExpr::expand(const FormEngine& E, const Mat2& A, long prec) const {
  int code = mat_code(A, N_);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->by_matrix.find(code);
    if (it != cache_->by_matrix.end() && it->second.prec >= prec) return it->second.truncated(prec);
  }
  IntSeries s = E.combination_at(terms_, A, prec);
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& slot = cache_->by_matrix[code];
  if (slot.prec < s.prec) slot = s;
  return s;
}

long sturm_precision(int N, int k) {
  long order = static_cast<long>(N) * N * N;
  long num = 1, den = 1;
  int n = N;
  for (int p = 2; p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    num *= p * p - 1;
    den *= p * p;
  }
  long sl2 = order / den * num;
  long mubar = N > 2 ? sl2 / 2 : sl2;
  return k * mubar / 12 + 1;
}

ZVec flatten(const IntSeries& s, long prec) {
  if (prec > s.prec) throw PrecisionError("series shorter than requested");
  return ZVec(s.c.begin(), s.c.begin() + prec * s.phi);
}

QExp series_on_grid(const IntSeries& s, int width) {
  int N = s.N;
  if (width < 1 || N % width) throw InputError("width must divide N");
  int step = N / width;
  std::vector<CycNum> cs;
  for (long n = 0; n < s.prec; ++n) {
    if (n % step) {
      if (!s.zero_at(n)) throw Error("q-expansion exponent off the q_w grid: width or cusp bug");
      continue;
    }
    cs.push_back(s.coeff(n));
  }
  long prec_w = (s.prec + step - 1) / step;
  return QExp(N, width, 0, prec_w, std::move(cs));
}

QExp expansion_at(const FormEngine& E, const ModFormExpr& f, const Mat2& A, int width, long prec_qN) {
  return series_on_grid(f.expand(E, A, prec_qN), width);
}

QExp expansion_at_cusp(const FormEngine& E, const ModFormExpr& f, const CurveData& curve, int cusp,
                       long prec_qN) {
  const auto& c = curve.cusps.at(cusp);
  return expansion_at(E, f, c.rep, c.width, prec_qN);
}

std::optional<long> nu_at_cusp(const FormEngine& E, const ModFormExpr& f, const CurveData& curve,
                               int cusp) {
  long P = sturm_precision(curve.N, f.weight());
  QExp q = expansion_at_cusp(E, f, curve, cusp, P);
  for (size_t i = 0; i < q.coeffs().size(); ++i)
    if (!q.coeffs()[i].is_zero()) return static_cast<long>(i);
  return std::nullopt;
}

long dimension_weight_k(const CurveData& curve, int k) {
  if (k % 2) return 0;
  long c = static_cast<long>(curve.cusps.size());
  long g = curve.genus;
  if (k == 0) return 1;
  if (k == 2) return g + c - 1;
  return (k - 1) * (g - 1) + (k / 4) * curve.e2 + (k / 3) * curve.e3 + (k / 2) * c;
}

RRDims dimension_rr(const CurveData& curve, long m, const std::vector<int>& sigma) {
  std::set<int> in(sigma.begin(), sigma.end());
  if (in.empty()) throw InputError("cusp set must be nonempty");
  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(curve.cusps.size()); ++i)
    if (!in.count(i)) rest.push_back(i);
  if (rest.empty()) throw InputError("cusp set must be a proper subset of the cusps");
  return {m * curve.mu - curve.genus + 1, m * curve.width_sum(rest) - curve.genus + 1};
}

std::vector<TraceTerm> candidate_terms(int N, int k, uint64_t seed, size_t start, size_t count) {
  int phi = euler_phi(N);
  std::vector<EisIndex> pool;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      EisIndex x{a, b};
      if (!(x == negate_index(x, N))) pool.push_back(x);
    }
  std::vector<TraceTerm> out;
  for (size_t i = start; i < start + count; ++i) {
    std::seed_seq sq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                     static_cast<uint32_t>(i), static_cast<uint32_t>(i >> 32)};
    std::mt19937_64 rng(sq);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    TraceTerm t;
    t.zeta_power = static_cast<int>(i % phi);
    for (int r = 0; r < k; ++r) t.indices.push_back(pool[pick(rng)]);
    std::sort(t.indices.begin(), t.indices.end());
    out.push_back(std::move(t));
  }
  return out;
}

IntegralBasis build_basis(const FormEngine& E, const CurveData& curve, int k, const BasisOptions& opt) {
  int N = E.level();
  if (k < 2 || k % 2) throw InputError("weight must be even and at least 2");
  IntegralBasis B;
  B.N = N;
  B.k = k;
  B.prec = opt.prec > 0 ? opt.prec : sturm_precision(N, k);
  long target = static_cast<long>(curve.kg_degree) * dimension_weight_k(curve, k);
  long cap = opt.max_candidates > 0 ? opt.max_candidates : 20 * target + 200;
  int phi = euler_phi(N);
  ModPRank rank(static_cast<size_t>(B.prec * phi));
  size_t next = 0;
  const Mat2 I{};
  while (static_cast<long>(B.forms.size()) < target) {
    if (static_cast<long>(next) >= cap) throw Error("dimension not reached");
    size_t batch = static_cast<size_t>(std::max<long>(thread_count(), target - static_cast<long>(B.forms.size())));
    batch = std::min<size_t>(batch, static_cast<size_t>(cap) - next);
    auto terms = candidate_terms(N, k, opt.seed, next, batch);
    std::vector<ModFormExpr> forms(batch);
    std::vector<ZVec> rows(batch);
    parallel_for(batch, [&](size_t i) {
      forms[i] = ModFormExpr::trace(N, terms[i]);
      rows[i] = flatten(forms[i].expand(E, I, B.prec), B.prec);
    });
    for (size_t i = 0; i < batch && static_cast<long>(B.forms.size()) < target; ++i) {
      ++next;
      if (rank.add(rows[i])) {
        B.forms.push_back(forms[i]);
        B.rows.push_back(std::move(rows[i]));
      }
    }
  }
  B.candidates_tried = static_cast<long>(next);
  B.d = static_cast<long>(B.forms.size());
  if (bareiss_rank(B.rows) != target) throw Error("exact rank of the selected forms differs from the dimension");
  if (opt.extra_checks > 0) {
    auto extra = candidate_terms(N, k, opt.seed, next, static_cast<size_t>(opt.extra_checks));
    std::vector<ZVec> xr(extra.size());
    parallel_for(extra.size(), [&](size_t i) { xr[i] = flatten(E.trace_at(extra[i], I, B.prec), B.prec); });
    ZMat all = B.rows;
    all.insert(all.end(), xr.begin(), xr.end());
    if (bareiss_rank(all) != target) throw Error("trace forms exceed the Riemann-Roch dimension");
  }
  return B;
}

BoundCheck verify_small_basis_bound(const FormEngine& E, const IntegralBasis& B, const CurveData& curve) {
  int N = B.N, k = B.k;
  long G = static_cast<long>(E.group().order());
  mpz_class nk, nine_k, two_k;
  mpz_ui_pow_ui(nk.get_mpz_t(), N, k);
  mpz_ui_pow_ui(nine_k.get_mpz_t(), 9, k);
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
  // 2^k |a_n| <= 2 |G| 9^k N^k max(N^k, n^{2k})
  std::vector<mpz_class> rhs(B.prec);
  for (long n = 0; n < B.prec; ++n) {
    mpz_class n2k;
    mpz_ui_pow_ui(n2k.get_mpz_t(), n, 2 * k);
    rhs[n] = 2 * G * nine_k * nk * std::max(nk, n2k);
  }
  size_t nc = curve.cusps.size(), nf = B.forms.size();
  std::vector<BoundCheck> part(nc * nf);
  auto places = infinite_places(N);
  parallel_for(nc * nf, [&](size_t idx) {
    size_t c = idx / nf, f = idx % nf;
    IntSeries s = B.forms[f].expand(E, curve.cusps[c].rep, B.prec);
    BoundCheck& r = part[idx];
    for (long n = 0; n < B.prec; ++n) {
      ++r.coefficients;
      mpz_class l1 = 0;
      for (int i = 0; i < s.phi; ++i) l1 += abs(s.at(n)[i]);
      if (l1 * two_k <= rhs[n]) continue;
      ++r.interval_fallbacks;
      CycNum a = s.coeff(n);
      Interval bound = Interval::from_mpq(mpq_class(rhs[n], two_k));
      for (const auto& v : places)
        if (!abs_at_place(a, v, 128).le(bound)) {
          ++r.violations;
          break;
        }
    }
  });
  BoundCheck total;
  for (const auto& r : part) {
    total.coefficients += r.coefficients;
    total.violations += r.violations;
    total.interval_fallbacks += r.interval_fallbacks;
  }
  return total;
}

std::vector<std::vector<CycNum>> cusp_value_family(const FormEngine& E, const CurveData& curve, int k,
                                                   size_t count, uint64_t seed) {
  int N = E.level();
  auto terms = candidate_terms(N, k, seed, 0, count);
  size_t nc = curve.cusps.size();
  std::vector<std::vector<CycNum>> vals(nc, std::vector<CycNum>(count, CycNum(N)));
  parallel_for(nc * count, [&](size_t idx) {
    size_t c = idx / count, t = idx % count;
    vals[c][t] = E.trace_at(terms[t], curve.cusps[c].rep, 1).coeff(0);
  });
  return vals;
}

CuspOrbits compute_cusp_orbits(const FormEngine& E, const CurveData& curve, const std::vector<int>& D,
                               uint64_t seed) {
  size_t count = 2 * curve.cusps.size() + 4;
  for (int attempt = 0; attempt < 6; ++attempt) {
    int k = 4 + 2 * (attempt % 3);
    auto vals = cusp_value_family(E, curve, k, count, seed + static_cast<uint64_t>(attempt));
    try {
      return galois_orbits_of_cusps(curve, D, vals);
    } catch (const Error& e) {
      if (std::string(e.what()).find("separate") == std::string::npos) throw;
    }
    if (attempt % 3 == 2) count *= 2;
  }
  throw Error("values do not separate cusps");
}

std::optional<QVec> coordinates_in_basis(const IntegralBasis& B, const IntSeries& s) {
  QMat M;
  for (const auto& r : B.rows) M.emplace_back(r.begin(), r.end());
  ZVec v = flatten(s, B.prec);
  return solve_left(M, QVec(v.begin(), v.end()));
}

IntSeries delta_power_series(int N, long m, long prec) {
  IntSeries s(N, prec);
  long count = (prec + N - 1) / N;
  auto c = delta_power_coeffs(m, count);
  for (long n = 0; n < count; ++n) s.at(n * N)[0] = c[n];
  return s;
}

}  // namespace runge
