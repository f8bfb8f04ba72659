#include "runge/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "runge/error.hpp"
#include "runge/version.hpp"

namespace runge {

namespace {

mpz_class parse_mpz(const Json& j) {
  try {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    return mpz_class(j.get<std::string>());
  } catch (const std::exception&) {
    throw InputError("expected an integer, got " + j.dump());
  }
}

mpq_class parse_mpq(const Json& j) {
  try {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    mpq_class q(j.get<std::string>());
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw InputError("expected a rational, got " + j.dump());
  }
}

Json zvec_to_json(const ZVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

ZVec zvec_from_json(const Json& j) {
  ZVec v;
  for (const auto& x : j) v.push_back(parse_mpz(x));
  return v;
}

std::string mpfr_string(mpfr_srcptr x, mpfr_rnd_t rnd) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.20R*g", rnd, x);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw InputError(std::string("bad field '") + key + "'");
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

Json mat_to_json(const Mat2& A) { return Json::array({A.a, A.b, A.c, A.d}); }

Mat2 mat_from_json(const Json& j, int N) {
  if (!j.is_array() || j.size() != 4) throw InputError("a matrix is a list [a, b, c, d]");
  long v[4];
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number_integer()) throw InputError("matrix entries must be integers");
    v[i] = j[i].get<long>();
  }
  return mat_reduce(v[0], v[1], v[2], v[3], N);
}

GroupInput parse_group(const Json& j) {
  GroupInput g;
  g.N = field<int>(j, "N");
  if (g.N <= 2) throw InputError("N>2 required");
  if (j.contains("name") && j["name"].is_string()) g.name = j["name"].get<std::string>();
  if (!j.contains("generators") || !j["generators"].is_array())
    throw InputError("missing field 'generators'");
  for (const auto& m : j["generators"]) {
    Mat2 A = mat_from_json(m, g.N);
    long d = mat_det(A, g.N);
    if (std::gcd(d, static_cast<long>(g.N)) != 1)
      throw InputError("generator " + m.dump() + " is not invertible mod N");
    g.generators.push_back(A);
  }
  if (g.generators.empty()) g.generators.push_back(Mat2{});
  return g;
}

GroupInput read_group_file(const std::string& path) { return parse_group(read_json_file(path)); }

Json cycnum_to_json(const CycNum& x) {
  Json a = Json::array();
  for (const auto& c : x.coeffs()) a.push_back(c.get_str());
  return a;
}

CycNum cycnum_from_json(int N, const Json& j) {
  if (!j.is_array()) throw InputError("a cyclotomic number is a list of coordinates");
  std::vector<mpq_class> c;
  for (const auto& x : j) c.push_back(parse_mpq(x));
  if (static_cast<int>(c.size()) != euler_phi(N)) throw InputError("wrong number of coordinates");
  return CycNum(N, std::move(c));
}

Json qexp_to_json(const QExp& f) {
  Json j;
  j["level"] = f.level();
  j["width"] = f.width();
  j["start"] = f.start();
  if (f.exact())
    j["prec"] = "exact";
  else
    j["prec"] = f.prec();
  Json cs = Json::array();
  for (const auto& c : f.coeffs()) cs.push_back(cycnum_to_json(c));
  j["coeffs"] = cs;
  return j;
}

QExp qexp_from_json(const Json& j) {
  int N = field<int>(j, "level");
  int w = field<int>(j, "width");
  long start = field<long>(j, "start");
  long prec = j.at("prec").is_string() ? QExp::kExact : field<long>(j, "prec");
  std::vector<CycNum> cs;
  for (const auto& c : j.at("coeffs")) cs.push_back(cycnum_from_json(N, c));
  return QExp(N, w, start, prec, std::move(cs));
}

Json form_to_json(const ModFormExpr& f) {
  Json j;
  j["level"] = f.level();
  j["weight"] = f.weight();
  Json terms = Json::array();
  for (const auto& [c, t] : f.terms()) {
    Json idx = Json::array();
    for (const auto& a : t.indices) idx.push_back(Json::array({a.a, a.b}));
    terms.push_back(Json{{"coef", c.get_str()}, {"zeta_power", t.zeta_power}, {"indices", idx}});
  }
  j["terms"] = terms;
  return j;
}

ModFormExpr form_from_json(const Json& j) {
  int N = field<int>(j, "level");
  int k = field<int>(j, "weight");
  std::vector<std::pair<mpz_class, TraceTerm>> terms;
  for (const auto& t : j.at("terms")) {
    TraceTerm tt;
    tt.zeta_power = field<int>(t, "zeta_power");
    for (const auto& a : t.at("indices")) {
      if (!a.is_array() || a.size() != 2) throw InputError("an Eisenstein index is a pair");
      tt.indices.push_back(make_index(a[0].get<long>(), a[1].get<long>(), N));
    }
    if (tt.weight() != k) throw InputError("trace term of the wrong weight");
    terms.push_back({parse_mpz(t.at("coef")), tt});
  }
  return ModFormExpr(N, k, std::move(terms));
}

Json interval_to_json(const Interval& x) {
  return Json{{"lo", mpfr_string(x.lo(), MPFR_RNDD)}, {"hi", mpfr_string(x.hi(), MPFR_RNDU)}};
}

Json checks_to_json(const CheckList& c) {
  Json a = Json::array();
  for (const auto& [name, ok] : c) a.push_back(Json{{"check", name}, {"pass", ok}});
  return a;
}

Json curve_to_json(const CurveData& c) {
  Json j;
  j["N"] = c.N;
  j["group_order"] = c.group_order;
  j["mu"] = c.mu;
  j["genus"] = c.genus;
  j["e2"] = c.e2;
  j["e3"] = c.e3;
  j["kg_degree"] = c.kg_degree;
  j["det_image"] = c.det_image;
  Json cusps = Json::array();
  for (size_t i = 0; i < c.cusps.size(); ++i)
    cusps.push_back(Json{{"id", i},
                         {"rep", mat_to_json(c.cusps[i].rep)},
                         {"width", c.cusps[i].width},
                         {"orbit", c.cusps[i].orbit_id}});
  j["cusps"] = cusps;
  std::vector<int> all(c.cusps.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  j["width_sum"] = c.width_sum(all);
  return j;
}

Json orbits_to_json(const CuspOrbits& o) {
  Json j;
  j["count"] = o.count();
  j["orbits"] = o.orbits;
  return j;
}

Json bound_report_to_json(const BoundReport& r) {
  Json in;
  in["N"] = r.in.N;
  in["m"] = r.in.m;
  in["k"] = 12 * r.in.m;
  in["mu"] = r.in.mu;
  in["absG"] = r.in.absG;
  Json prof = Json::array();
  for (const auto& [w, n] : r.in.sigma_profile) prof.push_back(Json{{"width", w}, {"size", n}});
  in["sigma_profile"] = prof;
  in["s"] = r.in.s;
  Json j;
  j["inputs"] = in;
  j["log_beta"] = interval_to_json(r.log_beta);
  j["log_C"] = interval_to_json(r.log_C);
  j["log_Cprime"] = interval_to_json(r.log_Cprime);
  j["log_calB"] = interval_to_json(r.log_calB);
  j["log_alpha_norm"] = interval_to_json(r.log_alpha_norm);
  j["height_bound_exact"] = interval_to_json(r.height_exact);
  if (r.mid_applicable) {
    j["d_exponent"] = r.d_exponent;
    j["height_bound_mid"] = interval_to_json(r.height_mid);
  }
  j["height_bound_poly"] = interval_to_json(r.height_poly);
  j["height_bound_coarse"] = interval_to_json(r.height_coarse);
  j["bilu_parent"] = interval_to_json(r.bilu_parent);
  j["checks"] = checks_to_json(r.checks);
  return j;
}

Json basis_to_json(const FormEngine& E, const IntegralBasis& B, const CurveData& curve, long prec) {
  Json j;
  j["N"] = B.N;
  j["k"] = B.k;
  j["dim"] = B.d;
  j["candidates_tried"] = B.candidates_tried;
  j["prec_qN"] = prec;
  Json forms = Json::array();
  for (const auto& f : B.forms) {
    Json fj = form_to_json(f);
    Json ex = Json::array();
    for (size_t c = 0; c < curve.cusps.size(); ++c)
      ex.push_back(Json{{"cusp", c},
                        {"expansion", qexp_to_json(expansion_at_cusp(E, f, curve, static_cast<int>(c), prec))}});
    fj["expansions"] = ex;
    forms.push_back(fj);
  }
  j["forms"] = forms;
  return j;
}

Json certificate_to_json(const PhiCertificate& c) {
  Json j;
  j["N"] = c.N;
  Json gens = Json::array();
  for (const auto& g : c.generators) gens.push_back(mat_to_json(g));
  j["generators"] = gens;
  j["m"] = c.m;
  j["k"] = c.k;
  j["sigma"] = c.sigma;
  j["D_K"] = c.D_K;
  j["basis_dim"] = c.basis_dim;
  j["kernel_dim"] = c.kernel_dim;
  j["kernel_lower"] = c.kernel_lower;
  Json basis = Json::array();
  for (const auto& f : c.basis) basis.push_back(form_to_json(f));
  j["basis"] = basis;
  j["u"] = zvec_to_json(c.u);
  j["u_l1"] = c.u_l1.get_str();
  j["f"] = form_to_json(c.f);
  Json cusps = Json::array();
  for (const auto& p : c.phi.cusps) {
    Json pj{{"cusp", p.cusp}, {"width", p.width}, {"nu", p.nu}, {"ord", p.ord}, {"in_sigma", p.in_sigma}};
    if (p.in_sigma) pj["value"] = cycnum_to_json(p.value);
    cusps.push_back(pj);
  }
  j["phi"] = Json{{"pole_total", c.phi.pole_total}, {"cusps", cusps}};
  Json qc = Json::array();
  for (const auto& v : c.q.coeffs) qc.push_back(zvec_to_json(v));
  j["Q"] = Json{{"degree", c.q.degree},
                {"pole_sum", c.q.pole_sum},
                {"checked_to", c.q.checked_to},
                {"coeffs_in_j", qc}};
  Json xi = Json::array();
  for (const auto& x : c.xi) {
    Json xj{{"orbit", x.orbit}, {"cusp", x.cusp}, {"width", x.width}, {"trivial", x.trivial}};
    if (!x.trivial) {
      xj["r"] = x.r;
      xj["gamma"] = cycnum_to_json(x.gamma);
    }
    xj["xi"] = cycnum_to_json(x.xi);
    xi.push_back(xj);
  }
  j["xi"] = xi;
  j["bounds"] = bound_report_to_json(c.bounds);
  j["checks"] = checks_to_json(c.checks);
  j["ok"] = c.ok();
  return j;
}

PhiCertificate certificate_from_json(const Json& j) {
  PhiCertificate c;
  try {
    c.N = field<int>(j, "N");
    for (const auto& g : j.at("generators")) c.generators.push_back(mat_from_json(g, c.N));
    c.m = field<long>(j, "m");
    c.k = field<int>(j, "k");
    c.sigma = field<std::vector<int>>(j, "sigma");
    c.D_K = field<std::vector<int>>(j, "D_K");
    c.basis_dim = field<long>(j, "basis_dim");
    c.kernel_dim = field<long>(j, "kernel_dim");
    c.kernel_lower = field<long>(j, "kernel_lower");
    for (const auto& f : j.at("basis")) c.basis.push_back(form_from_json(f));
    c.u = zvec_from_json(j.at("u"));
    c.u_l1 = parse_mpz(j.at("u_l1"));
    c.f = form_from_json(j.at("f"));
    const Json& ph = j.at("phi");
    c.phi.pole_total = field<long>(ph, "pole_total");
    for (const auto& p : ph.at("cusps")) {
      CuspPhi cp;
      cp.cusp = field<int>(p, "cusp");
      cp.width = field<int>(p, "width");
      cp.nu = field<long>(p, "nu");
      cp.ord = field<long>(p, "ord");
      cp.in_sigma = field<bool>(p, "in_sigma");
      cp.value = cp.in_sigma ? cycnum_from_json(c.N, p.at("value")) : CycNum(c.N);
      c.phi.cusps.push_back(cp);
    }
    const Json& q = j.at("Q");
    c.q.degree = field<long>(q, "degree");
    c.q.pole_sum = field<long>(q, "pole_sum");
    c.q.checked_to = field<long>(q, "checked_to");
    for (const auto& v : q.at("coeffs_in_j")) c.q.coeffs.push_back(zvec_from_json(v));
    for (const auto& x : j.at("xi")) {
      XiData xd;
      xd.orbit = field<std::vector<int>>(x, "orbit");
      xd.cusp = field<int>(x, "cusp");
      xd.width = field<int>(x, "width");
      xd.trivial = field<bool>(x, "trivial");
      if (!xd.trivial) {
        xd.r = field<long>(x, "r");
        xd.gamma = cycnum_from_json(c.N, x.at("gamma"));
      } else {
        xd.gamma = CycNum(c.N);
      }
      xd.xi = cycnum_from_json(c.N, x.at("xi"));
      c.xi.push_back(xd);
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
  return c;
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const Json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

void stamp(Json& doc, const Json& config, uint64_t seed) {
  Json out;
  out["meta"] = Json{{"version", kVersion}, {"config_hash", config_hash(config)}, {"seed", seed}};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "meta") out[it.key()] = it.value();
  doc = std::move(out);
}

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
    if (!out) throw Error("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

}  // namespace runge
