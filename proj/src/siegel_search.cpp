#include "runge/siegel_search.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "runge/error.hpp"
#include "runge/parallel.hpp"

namespace runge {

void append_checks(CheckList& into, const CheckList& from, const std::string& prefix) {
  for (const auto& c : from) into.push_back({prefix + c.first, c.second});
}

bool all_pass(const CheckList& c) {
  return std::all_of(c.begin(), c.end(), [](const auto& x) { return x.second; });
}

bool PhiCertificate::ok() const { return all_pass(checks); }

namespace {

long first_nonzero(const IntSeries& s, long from = 0) {
  for (long n = from; n < s.prec; ++n)
    if (!s.zero_at(n)) return n;
  return -1;
}

// Upper bound check |x|_v <= exp(log_bound) at every infinite place; the l1
// norm is tried first. Returns (ok, used_fallback).
std::pair<bool, bool> abs_bounded(const CycNum& x, const Interval& log_bound) {
  if (x.is_zero()) return {true, false};
  mpq_class l1 = x.l1_norm();
  if (Interval::from_mpq(l1).log().le(log_bound)) return {true, false};
  Interval b = log_bound.exp();
  for (const auto& v : infinite_places(x.level()))
    if (!abs_at_place(x, v, 256).le(b)) return {false, true};
  return {true, true};
}

bool in_sigma(const std::vector<int>& sigma, int c) {
  return std::find(sigma.begin(), sigma.end(), c) != sigma.end();
}

}  // namespace

PsiSystem assemble_psi(const FormEngine& E, const IntegralBasis& B, const CurveData& curve,
                       const std::vector<int>& sigma, long m) {
  if (sigma.empty()) throw InputError("Sigma must be nonempty");
  if (sigma.size() >= curve.cusps.size()) throw InputError("Sigma must be a proper subset of the cusps");
  const int N = curve.N;
  const long prec = m * N;
  if (B.prec < prec) throw PrecisionError("basis precision below m N");
  PsiSystem sys;
  sys.sigma = sigma;
  sys.m = m;
  const size_t d = B.forms.size();
  std::vector<IntSeries> ex(sigma.size() * d);
  parallel_for(ex.size(), [&](size_t idx) {
    const auto& c = curve.cusps.at(sigma[idx / d]);
    ex[idx] = B.forms[idx % d].expand(E, c.rep, prec);
  });
  int phi = euler_phi(N);
  for (size_t ci = 0; ci < sigma.size(); ++ci) {
    int w = curve.cusps[sigma[ci]].width;
    int step = N / w;
    long before = static_cast<long>(sys.matrix.size());
    for (long n = 0; n < prec; ++n) {
      for (int r = 0; r < phi; ++r) {
        ZVec row(d);
        bool nz = false;
        for (size_t i = 0; i < d; ++i) {
          row[i] = ex[ci * d + i].at(n)[r];
          if (row[i] != 0) nz = true;
        }
        if (!nz) continue;
        if (n % step) throw Error("q-expansion exponent off the q_w grid: width or cusp bug");
        sys.matrix.push_back(std::move(row));
      }
    }
    sys.rows_per_cusp = std::max(sys.rows_per_cusp, static_cast<long>(sys.matrix.size()) - before);
  }
  sys.kernel = integer_kernel(sys.matrix, d);
  auto dims = dimension_rr(curve, m, sigma);
  sys.kernel_lower = curve.kg_degree * dims.dim_W_lower;

  auto dc = coordinates_in_basis(B, delta_power_series(N, m, B.prec));
  if (!dc) throw Error("Delta^m is not in the span of the basis");
  sys.delta_coords = *dc;
  sys.delta_in_kernel = true;
  for (const auto& row : sys.matrix) {
    mpq_class s = 0;
    for (size_t i = 0; i < d; ++i) s += row[i] * sys.delta_coords[i];
    if (s != 0) sys.delta_in_kernel = false;
  }
  return sys;
}

bool proportional_to_delta(const ZVec& inf_row, int N, long m, long prec) {
  int phi = euler_phi(N);
  long lead = m * N;
  if (lead >= prec) throw PrecisionError("precision below the leading exponent of Delta^m");
  auto dl = delta_power_coeffs(m, (prec + N - 1) / N + 1);
  const mpz_class* lam = inf_row.data() + lead * phi;
  for (long n = 0; n < prec; ++n) {
    const mpz_class* a = inf_row.data() + n * phi;
    mpz_class dn = n % N ? mpz_class(0) : dl[n / N];
    for (int r = 0; r < phi; ++r)
      if (a[r] != lam[r] * dn) return false;
  }
  return true;
}

ShortVector short_kernel_vector(const PsiSystem& sys, const IntegralBasis& B, const Interval& log_calB) {
  const auto& K = sys.kernel;
  if (K.empty()) throw Error("kernel of psi is trivial");
  std::vector<ZVec> cands;
  for (size_t i = 0; i < K.size(); ++i) {
    cands.push_back(K[i]);
    ZVec neg = K[i];
    for (auto& x : neg) x = -x;
    cands.push_back(neg);
    for (size_t j = i + 1; j < K.size(); ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          ZVec v(K[i].size());
          for (size_t t = 0; t < v.size(); ++t) v[t] = si * K[i][t] + sj * K[j][t];
          bool nz = std::any_of(v.begin(), v.end(), [](const mpz_class& x) { return x != 0; });
          if (nz) cands.push_back(std::move(v));
        }
  }
  std::vector<std::pair<mpz_class, size_t>> order;
  for (size_t i = 0; i < cands.size(); ++i) order.push_back({l1_norm(cands[i]), i});
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return cands[x.second] < cands[y.second];
  });
  ShortVector out;
  const size_t width = B.rows.empty() ? 0 : B.rows[0].size();
  for (const auto& [l1, idx] : order) {
    ++out.examined;
    const ZVec& u = cands[idx];
    ZVec row(width);
    for (size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      for (size_t t = 0; t < width; ++t) row[t] += u[i] * B.rows[i][t];
    }
    if (proportional_to_delta(row, B.N, sys.m, B.prec)) {
      ++out.rejected;
      continue;
    }
    out.u = u;
    out.l1 = l1;
    out.within_calB = Interval::from_mpz(l1).log().le(log_calB);
    return out;
  }
  throw Error("no admissible vector within the searched combinations");
}

ModFormExpr combine_forms(const std::vector<ModFormExpr>& forms, const ZVec& u) {
  if (forms.size() != u.size() || forms.empty()) throw InputError("coefficient count mismatch");
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  std::map<Key, mpz_class> acc;
  std::vector<Key> order;
  for (size_t i = 0; i < forms.size(); ++i) {
    if (u[i] == 0) continue;
    for (const auto& [c, t] : forms[i].terms()) {
      Key key{t.zeta_power, {}};
      for (const auto& a : t.indices) key.second.push_back({a.a, a.b});
      auto it = acc.find(key);
      if (it == acc.end()) {
        acc.emplace(key, u[i] * c);
        order.push_back(key);
      } else {
        it->second += u[i] * c;
      }
    }
  }
  std::vector<std::pair<mpz_class, TraceTerm>> terms;
  for (const auto& key : order) {
    const mpz_class& c = acc[key];
    if (c == 0) continue;
    TraceTerm t;
    t.zeta_power = key.first;
    for (const auto& [a, b] : key.second) t.indices.push_back(EisIndex{a, b});
    terms.push_back({c, t});
  }
  return ModFormExpr(forms[0].level(), forms[0].weight(), std::move(terms));
}

BoundCheck check_form_bound(const FormEngine& E, const ModFormExpr& f, const CurveData& curve, long m,
                            const Interval& log_beta) {
  const long P = sturm_precision(curve.N, f.weight());
  BoundCheck res;
  for (size_t ci = 0; ci < curve.cusps.size(); ++ci) {
    const auto& c = curve.cusps[ci];
    QExp q = series_on_grid(f.expand(E, c.rep, P), c.width);
    for (size_t n = 0; n < q.coeffs().size(); ++n) {
      Interval lb = log_beta;
      if (static_cast<long>(n) > c.width)
        lb = lb + Interval::from_long(24 * m) * Interval::from_mpq(mpq_class(n, c.width)).log();
      ++res.coefficients;
      auto [ok, fb] = abs_bounded(q.coeffs()[n], lb);
      if (fb) ++res.interval_fallbacks;
      if (!ok) ++res.violations;
    }
  }
  return res;
}

PhiData construct_phi(const FormEngine& E, const ModFormExpr& f, long m, const CurveData& curve,
                      const std::vector<int>& sigma, const Interval& log_beta) {
  PhiData out;
  const int N = curve.N;
  Interval value_bound = log_beta;
  if (m > 1) value_bound = value_bound + Interval::from_long(24 * m) * Interval::from_long(m).log();
  bool sigma_ok = true, integral = true, bounded = true;
  for (size_t ci = 0; ci < curve.cusps.size(); ++ci) {
    const auto& c = curve.cusps[ci];
    auto nu = nu_at_cusp(E, f, curve, static_cast<int>(ci));
    if (!nu) throw Error("form vanishes identically");
    CuspPhi p;
    p.cusp = static_cast<int>(ci);
    p.width = c.width;
    p.nu = *nu;
    p.ord = *nu - m * c.width;
    p.in_sigma = in_sigma(sigma, p.cusp);
    if (p.in_sigma) {
      IntSeries s = f.expand(E, c.rep, m * N + 1);
      p.value = s.coeff(m * N);
      if (p.ord < 0) sigma_ok = false;
      if (!p.value.integral()) integral = false;
      if (!abs_bounded(p.value, value_bound).first) bounded = false;
    } else {
      p.value = CycNum(N);
    }
    if (p.ord < 0) out.pole_total += -p.ord;
    out.cusps.push_back(p);
  }
  out.checks.push_back({"ord_c(phi) >= 0 on Sigma", sigma_ok});
  out.checks.push_back({"phi(c) integral on Sigma", integral});
  out.checks.push_back({"|phi(c)|_v <= beta m^{24m}", bounded});
  out.checks.push_back({"phi has a pole", out.pole_total > 0});
  out.checks.push_back({"pole count <= m mu", out.pole_total <= m * curve.mu});
  return out;
}

namespace {

// Laurent series q_N^start * body with body.prec relative terms.
struct LSeries {
  long start = 0;
  IntSeries body;
  long abs_prec() const { return start + body.prec; }
};

LSeries lmul(const LSeries& a, const LSeries& b) {
  long p = std::min(a.body.prec, b.body.prec);
  return LSeries{a.start + b.start, int_mul(a.body, b.body, p)};
}

LSeries lsub(const LSeries& a, const LSeries& b) {
  long s = std::min(a.start, b.start);
  long hi = std::min(a.abs_prec(), b.abs_prec());
  IntSeries r(a.body.N, std::max(0L, hi - s));
  int phi = r.phi;
  for (long n = s; n < hi; ++n) {
    mpz_class* o = r.at(n - s);
    if (n >= a.start) {
      const mpz_class* x = a.body.at(n - a.start);
      for (int t = 0; t < phi; ++t) o[t] += x[t];
    }
    if (n >= b.start) {
      const mpz_class* y = b.body.at(n - b.start);
      for (int t = 0; t < phi; ++t) o[t] -= y[t];
    }
  }
  return LSeries{s, std::move(r)};
}

std::vector<mpz_class> conv(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b, size_t n) {
  std::vector<mpz_class> r(n);
  for (size_t i = 0; i < std::min(n, a.size()); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

}  // namespace

QPoly verify_integral_over_Zj(const FormEngine& E, const ModFormExpr& f, long m, long extra_q) {
  const int N = E.level();
  const int phi = euler_phi(N);
  const long P = sturm_precision(N, f.weight());
  auto R = right_coset_representatives(E.group());
  const size_t nr = R.size();
  QPoly out;
  out.degree = static_cast<long>(nr);

  std::vector<long> nu(nr);
  parallel_for(nr, [&](size_t i) {
    long v = first_nonzero(f.expand(E, R[i], P));
    if (v < 0) throw Error("f*A vanishes to the Sturm precision");
    nu[i] = v;
  });
  long Pi = 0;
  for (size_t i = 0; i < nr; ++i) Pi += std::max(0L, m * N - nu[i]);
  out.pole_sum = Pi;
  const long T = extra_q * N;
  std::vector<LSeries> phis(nr);
  parallel_for(nr, [&](size_t i) {
    long pa = std::max(T + Pi + m * N, nu[i] + 1);
    IntSeries s = f.expand(E, R[i], pa);
    long rel = pa - nu[i];
    IntSeries body(N, rel);
    std::copy(s.c.begin() + nu[i] * phi, s.c.end(), body.c.begin());
    auto h = eta_power_coeffs(-24 * m, rel / N + 1);
    IntSeries hs(N, rel);
    for (long n = 0; n * N < rel; ++n) hs.at(n * N)[0] = h[n];
    phis[i] = LSeries{nu[i] - m * N, int_mul(body, hs, rel)};
  });

  // prod (x - phi_A), coefficients low degree first
  const long big = T + Pi + 1;
  IntSeries one_body(N, big);
  one_body.at(0)[0] = 1;
  std::vector<LSeries> poly{LSeries{0, one_body}};
  for (size_t i = 0; i < nr; ++i) {
    std::vector<LSeries> next(poly.size() + 1);
    LSeries zero{0, IntSeries(N, big)};
    for (size_t t = 0; t < next.size(); ++t) {
      LSeries shifted = t >= 1 ? poly[t - 1] : zero;       // x * P
      LSeries prod = t < poly.size() ? lmul(phis[i], poly[t]) : zero;  // phi * P
      next[t] = lsub(shifted, prod);
    }
    poly = std::move(next);
  }

  long jdeg_bound = Pi / N;
  long need = jdeg_bound + extra_q + 2;
  auto e4 = e4_coeffs(need);
  auto qj = conv(conv(conv(e4, e4, need), e4, need), eta_power_coeffs(-24, need), need);
  std::vector<std::vector<mpz_class>> qj_pow{std::vector<mpz_class>(need)};
  qj_pow[0][0] = 1;

  bool rational = true, grid = true, integral = true, remainder = true, degree_ok = true, prec_ok = true;
  long checked = QExp::kExact;
  out.coeffs.resize(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) {
    const LSeries& c = poly[i];
    if (c.abs_prec() < T) prec_ok = false;
    // coefficients of q^e for e in [emin, emax)
    long emin = c.start >= 0 ? c.start / N : -((-c.start + N - 1) / N);
    long emax = c.abs_prec() > 0 ? (c.abs_prec() - 1) / N + 1 : -((-c.abs_prec()) / N);
    checked = std::min(checked, emax);
    std::vector<mpq_class> q(std::max(0L, emax - emin));
    for (long n = c.start; n < c.abs_prec(); ++n) {
      const mpz_class* x = c.body.at(n - c.start);
      bool nz = false;
      for (int t = 0; t < phi; ++t)
        if (x[t] != 0) nz = true;
      if (!nz) continue;
      if (n % N) {
        grid = false;
        continue;
      }
      for (int t = 1; t < phi; ++t)
        if (x[t] != 0) rational = false;
      q[n / N - emin] = x[0];
    }
    std::vector<mpz_class> jc;
    for (long e = emin; e < std::min(emax, 1L); ++e) {
      const mpq_class& v = q[e - emin];
      if (v == 0) continue;
      if (v.get_den() != 1) integral = false;
      long p = -e;
      if (static_cast<long>(jc.size()) <= p) jc.resize(p + 1);
      mpz_class cz = v.get_num();
      jc[p] += cz;
      while (static_cast<long>(qj_pow.size()) <= p)
        qj_pow.push_back(conv(qj_pow.back(), qj, need));
      const auto& w = qj_pow[p];
      for (long t = e; t < emax; ++t) {
        long idx = t - e;
        if (idx >= need) break;
        q[t - emin] -= cz * w[idx];
      }
    }
    for (long e = std::max(emin, 1L); e < emax; ++e)
      if (q[e - emin] != 0) remainder = false;
    for (long e = emin; e < std::min(emax, 1L); ++e)
      if (q[e - emin] != 0) remainder = false;
    if (static_cast<long>(jc.size()) - 1 > jdeg_bound) degree_ok = false;
    while (!jc.empty() && jc.back() == 0) jc.pop_back();
    out.coeffs[i] = std::move(jc);
  }
  out.checked_to = checked;
  out.checks.push_back({"deg_x Q = [GL2 : G]", static_cast<long>(poly.size()) - 1 == out.degree});
  out.checks.push_back({"Q leading coefficient 1", out.coeffs.back() == std::vector<mpz_class>{1}});
  out.checks.push_back({"Q coefficients known past the constant term", prec_ok && checked >= 1});
  out.checks.push_back({"Q coefficients are q-series", grid});
  out.checks.push_back({"Q coefficients rational", rational});
  out.checks.push_back({"Q coefficients in Z[j]", integral});
  out.checks.push_back({"j-reduction remainder zero", remainder});
  out.checks.push_back({"j-degree <= pole bound", degree_ok});
  return out;
}

XiData xi_certificate(const FormEngine& E, const ModFormExpr& f, long m, const CurveData& curve,
                      const std::vector<int>& orbit, const CycNum& phi_c, const std::vector<int>& D_K,
                      const CuspOrbits& orbits, const Interval& log_beta, const Interval& log_Cprime) {
  XiData out;
  out.orbit = orbit;
  out.cusp = orbit.at(0);
  const auto& c = curve.cusps.at(out.cusp);
  const int N = curve.N, w = c.width, step = N / w;
  out.width = w;
  bool in_K = true;
  for (int d : D_K)
    if (galois_apply(d, phi_c) != phi_c) in_K = false;
  if (!in_K) {
    out.trivial = true;
    out.xi = CycNum(N, mpq_class(1));
    out.gamma = CycNum(N);
    out.checks.push_back({"phi(c) not in K, xi = 1", true});
    return out;
  }
  long prec = (m * w + m * curve.mu) * step + 1;
  prec = std::max(prec, sturm_precision(N, f.weight()));
  IntSeries s = f.expand(E, c.rep, prec);
  IntSeries dl = delta_power_series(N, m, prec);
  IntSeries diff = s;
  std::vector<mpz_class> neg(phi_c.coeffs().size());
  for (size_t t = 0; t < neg.size(); ++t) neg[t] = -phi_c.coeffs()[t].get_num();
  if (!phi_c.integral()) throw Error("phi(c) is not integral");
  int_addmul(diff, dl, neg);
  long n0 = first_nonzero(diff);
  if (n0 < 0) throw Error("f - phi(c) Delta^m vanishes: r exceeds m mu");
  if (n0 % step) throw Error("q-expansion exponent off the q_w grid: width or cusp bug");
  out.r = n0 / step - m * w;
  CycNum b = s.coeff(n0);
  if (out.r % w == 0) {
    auto a = delta_power_coeffs(m, m + out.r / w + 1);
    out.gamma = b - phi_c.scaled(mpq_class(a[m + out.r / w]));
  } else {
    out.gamma = b;
  }
  out.checks.push_back({"r >= 1", out.r >= 1});
  out.checks.push_back({"r <= m mu", out.r <= m * curve.mu});
  out.checks.push_back({"gamma matches the expansion", out.gamma == diff.coeff(n0)});
  out.checks.push_back({"gamma nonzero", !out.gamma.is_zero()});

  std::vector<int> H;
  for (int d : D_K)
    if (orbits.action.at(d).at(out.cusp) == out.cusp) H.push_back(d);
  CycNum gw = out.gamma.pow(w);
  bool fixed = true;
  for (int h : H)
    if (galois_apply(h, gw) != gw) fixed = false;
  out.checks.push_back({"gamma^w fixed by the stabilizer of c", fixed});
  out.checks.push_back({"|D_K : stabilizer| = |orbit|", D_K.size() == H.size() * orbit.size()});
  out.xi = norm_to_subfield(gw, D_K, H);
  bool xi_in_K = true;
  for (int d : D_K)
    if (galois_apply(d, out.xi) != out.xi) xi_in_K = false;
  out.checks.push_back({"xi in K", xi_in_K});
  out.checks.push_back({"xi integral", out.xi.integral()});
  out.checks.push_back({"xi nonzero", !out.xi.is_zero()});
  Interval lg = log_beta + log_Cprime;
  out.checks.push_back({"|gamma|_v <= beta C'", abs_bounded(out.gamma, lg).first});
  Interval lx = Interval::from_long(static_cast<long>(w) * static_cast<long>(orbit.size())) * lg;
  out.checks.push_back({"|xi|_v <= (beta C')^{w |orbit|}", abs_bounded(out.xi, lx).first});
  return out;
}

namespace {

void check_sigma(const CurveData& curve, const std::vector<int>& sigma, const CuspOrbits& orbits) {
  if (sigma.empty()) throw InputError("Sigma must be nonempty");
  std::set<int> s(sigma.begin(), sigma.end());
  if (s.size() != sigma.size()) throw InputError("Sigma has repeated cusps");
  for (int c : sigma)
    if (c < 0 || c >= static_cast<int>(curve.cusps.size())) throw InputError("cusp id out of range");
  if (s.size() >= curve.cusps.size()) throw InputError("Sigma must be a proper subset of the cusps");
  for (int c : sigma)
    for (int x : orbits.orbits.at(orbits.orbit_of.at(c)))
      if (!s.count(x)) throw InputError("Sigma is not a union of Galois orbits");
}

std::vector<std::vector<int>> sigma_orbits(const std::vector<int>& sigma, const CuspOrbits& orbits) {
  std::vector<std::vector<int>> out;
  std::set<int> seen;
  for (int c : sigma) {
    int o = orbits.orbit_of.at(c);
    if (seen.insert(o).second) out.push_back(orbits.orbits.at(o));
  }
  return out;
}

BoundReport bounds_for(const CurveData& curve, long m, const std::vector<int>& sigma,
                       const CuspOrbits& orbits) {
  BoundInputs in;
  in.N = curve.N;
  in.m = m;
  in.mu = curve.mu;
  in.absG = curve.group_order;
  for (const auto& o : sigma_orbits(sigma, orbits))
    in.sigma_profile.push_back({curve.cusps[o[0]].width, static_cast<int>(o.size())});
  return height_bound_chain(in);
}

}  // namespace

namespace {

// Recomputes everything downstream of (basis, u). With store set, the results
// are written into cert; otherwise they are compared with the stored values.
CheckList evaluate_certificate(PhiCertificate& cert, bool store) {
  CheckList out;
  Gl2Subgroup G = subgroup_closure(cert.N, cert.generators);
  CurveData curve = curve_invariants(G);
  FormEngine E(G);
  CuspOrbits orbits = compute_cusp_orbits(E, curve, cert.D_K);
  check_sigma(curve, cert.sigma, orbits);
  long m = compute_m(curve, cert.sigma);
  out.push_back({"m recomputed", m == cert.m && cert.k == 12 * m});
  BoundReport br = bounds_for(curve, m, cert.sigma, orbits);
  out.push_back({"||u||_1 <= calB", Interval::from_mpz(l1_norm(cert.u)).log().le(br.log_calB)});
  out.push_back({"stored ||u||_1", l1_norm(cert.u) == cert.u_l1});
  ModFormExpr f = combine_forms(cert.basis, cert.u);
  if (store) cert.f = f;
  bool same = f.terms().size() == cert.f.terms().size();
  for (size_t i = 0; same && i < f.terms().size(); ++i) {
    const auto& a = f.terms()[i];
    const auto& b = cert.f.terms()[i];
    same = a.first == b.first && a.second.zeta_power == b.second.zeta_power &&
           a.second.indices == b.second.indices;
  }
  out.push_back({"f = sum u_i f_i", same});

  long P = sturm_precision(curve.N, f.weight());
  ZVec inf = flatten(f.expand(E, Mat2{}, P), P);
  out.push_back({"f not a multiple of Delta^m", !proportional_to_delta(inf, curve.N, m, P)});
  BoundCheck bc = check_form_bound(E, f, curve, m, br.log_beta);
  out.push_back({"|b_n|_v <= beta max(1, (n/w)^{24m})", bc.violations == 0});

  PhiData pd = construct_phi(E, f, m, curve, cert.sigma, br.log_beta);
  append_checks(out, pd.checks);
  if (store) {
    cert.phi = pd;
  } else {
    bool match = pd.cusps.size() == cert.phi.cusps.size() && pd.pole_total == cert.phi.pole_total;
    for (size_t i = 0; match && i < pd.cusps.size(); ++i) {
      const auto& a = pd.cusps[i];
      const auto& b = cert.phi.cusps[i];
      match = a.nu == b.nu && a.ord == b.ord && a.in_sigma == b.in_sigma &&
              (!a.in_sigma || a.value == b.value);
    }
    out.push_back({"stored cusp data match", match});
  }

  QPoly q = verify_integral_over_Zj(E, f, m);
  append_checks(out, q.checks);
  if (store)
    cert.q = q;
  else
    out.push_back({"stored Q(x) matches", q.coeffs == cert.q.coeffs && q.degree == cert.q.degree});

  auto orbs = sigma_orbits(cert.sigma, orbits);
  std::vector<XiData> xs;
  for (size_t i = 0; i < orbs.size(); ++i) {
    XiData x = xi_certificate(E, f, m, curve, orbs[i], pd.cusps[orbs[i][0]].value, cert.D_K, orbits,
                              br.log_beta, br.log_Cprime);
    append_checks(out, x.checks, "orbit " + std::to_string(i) + ": ");
    xs.push_back(std::move(x));
  }
  if (store) {
    cert.xi = xs;
  } else {
    bool match = cert.xi.size() == xs.size();
    for (size_t i = 0; match && i < xs.size(); ++i)
      match = cert.xi[i].r == xs[i].r && cert.xi[i].trivial == xs[i].trivial &&
              cert.xi[i].xi == xs[i].xi && cert.xi[i].gamma == xs[i].gamma;
    out.push_back({"stored xi data match", match});
  }
  return out;
}

}  // namespace

PhiCertificate construct_certificate(const Gl2Subgroup& G, const CurveData& curve,
                                     const std::vector<int>& sigma, const std::vector<int>& D_K,
                                     const CuspOrbits& orbits, const ConstructOptions& opt) {
  check_sigma(curve, sigma, orbits);
  PhiCertificate cert;
  cert.N = curve.N;
  cert.generators = G.generators();
  cert.sigma = sigma;
  cert.D_K = D_K;
  cert.m = compute_m(curve, sigma);
  cert.k = static_cast<int>(12 * cert.m);
  FormEngine E(G);
  IntegralBasis B = build_basis(E, curve, cert.k, opt.basis);
  cert.basis_dim = B.d;
  cert.basis = B.forms;
  cert.bounds = bounds_for(curve, cert.m, sigma, orbits);

  PsiSystem sys = assemble_psi(E, B, curve, sigma, cert.m);
  cert.kernel_dim = static_cast<long>(sys.kernel.size());
  cert.kernel_lower = sys.kernel_lower;
  cert.checks.push_back({"kernel dim >= [K_G:Q](m sum w - g + 1)", cert.kernel_dim >= sys.kernel_lower});
  cert.checks.push_back({"kernel dim > [K_G:Q]", cert.kernel_dim > curve.kg_degree});
  cert.checks.push_back({"Delta^m in kernel", sys.delta_in_kernel});

  ShortVector sv = short_kernel_vector(sys, B, cert.bounds.log_calB);
  cert.u = sv.u;
  cert.u_l1 = sv.l1;
  append_checks(cert.checks, evaluate_certificate(cert, true));
  return cert;
}

CheckList recheck_certificate(const PhiCertificate& cert) {
  PhiCertificate copy = cert;
  return evaluate_certificate(copy, false);
}

}  // namespace runge
