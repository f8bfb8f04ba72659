// Command-line front end: analyze | construct | verify | compare.

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <numeric>
#include <sstream>

#include "runge/bounds.hpp"
#include "runge/error.hpp"
#include "runge/json_io.hpp"
#include "runge/modform_space.hpp"
#include "runge/siegel_search.hpp"
#include "runge/verification.hpp"
#include "runge/version.hpp"

using namespace runge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoRunge = 2;

struct Options {
  std::string input;
  std::vector<std::string> inputs;
  std::string sigma = "auto";
  std::vector<std::string> K{"KG"};
  std::vector<int> s{1};
  long prec = 0;
  uint64_t seed = 1;
  std::string out;
  std::string tags;
  std::string format = "csv";
  bool allow_large = false;
  int max_N = 8;
};

// Text rendering of a JSON document, one "path = value" line per leaf, so the
// text output carries exactly the JSON content.
void render(const Json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    for (size_t i = 0; i < j.size(); ++i) render(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Json& doc, const Options& o) {
  render(doc, "", std::cout);
  if (!o.out.empty()) write_atomic(o.out, doc.dump(2) + "\n");
}

struct Setup {
  GroupInput in;
  Json group_json;
  Gl2Subgroup G;
  CurveData curve;
  std::unique_ptr<FormEngine> E;
  std::vector<int> D;
  CuspOrbits orbits;
};

std::vector<int> parse_D(const std::vector<std::string>& K, const CurveData& curve) {
  const int N = curve.N;
  std::vector<int> det = curve.det_image;
  std::sort(det.begin(), det.end());
  if (K.empty() || (K.size() == 1 && (K[0] == "KG" || K[0] == "kg"))) return det;
  std::vector<int> D;
  if (K.size() == 1 && K[0] == "full") {
    std::vector<int> all;
    for (int d = 1; d < N; ++d)
      if (std::gcd(d, N) == 1) all.push_back(d);
    D = all;
  } else {
    std::vector<int> gens;
    for (const auto& s : K) {
      std::string t = s.rfind("gens:", 0) == 0 ? s.substr(5) : s;
      std::stringstream ss(t);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        int g;
        try {
          g = std::stoi(item);
        } catch (const std::exception&) {
          throw InputError("--K expects KG, full or unit generators, got '" + item + "'");
        }
        if (std::gcd(((g % N) + N) % N, N) != 1) throw InputError("--K generator " + item + " is not a unit mod N");
        gens.push_back(g);
      }
    }
    D = unit_subgroup(N, gens);
  }
  for (int d : D)
    if (!std::binary_search(det.begin(), det.end(), d))
      throw InputError("K must contain K_G: the subgroup for K must lie in det(G)");
  return D;
}

Setup load_setup(const Options& o) {
  Setup s;
  if (o.input.empty()) throw InputError("--input is required");
  s.group_json = read_json_file(o.input);
  s.in = parse_group(s.group_json);
  s.G = subgroup_closure(s.in.N, s.in.generators);
  s.curve = curve_invariants(s.G);
  s.E = std::make_unique<FormEngine>(s.G);
  s.D = parse_D(o.K, s.curve);
  s.orbits = compute_cusp_orbits(*s.E, s.curve, s.D);
  return s;
}

std::vector<int> select_sigma(const Options& o, const Setup& s, int count_s) {
  std::vector<int> ids;
  if (o.sigma == "auto") {
    int take = std::min(count_s, s.orbits.count() - 1);
    for (int i = 0; i < take; ++i) ids.push_back(i);
  } else {
    std::stringstream ss(o.sigma);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int id;
      try {
        id = std::stoi(item);
      } catch (const std::exception&) {
        throw InputError("--sigma expects auto or orbit ids, got '" + item + "'");
      }
      if (id < 0 || id >= s.orbits.count()) throw InputError("orbit id " + item + " out of range");
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }
  std::vector<int> sigma;
  for (int id : ids)
    for (int c : s.orbits.orbits[id]) sigma.push_back(c);
  std::sort(sigma.begin(), sigma.end());
  if (sigma.empty()) throw InputError("Sigma must be nonempty (the curve has a single cusp orbit)");
  if (sigma.size() >= s.curve.cusps.size()) throw InputError("Sigma must be a proper subset of the cusps");
  return sigma;
}

Json config_json(const std::string& cmd, const Options& o, const Json& group) {
  return Json{{"command", cmd}, {"group", group}, {"sigma", o.sigma}, {"K", o.K},
              {"s", o.s},       {"prec", o.prec}, {"seed", o.seed}};
}

Json input_json(const Setup& s) {
  Json gens = Json::array();
  for (const auto& g : s.in.generators) gens.push_back(mat_to_json(g));
  return Json{{"name", s.in.name}, {"N", s.in.N}, {"generators", gens}};
}

BoundInputs bound_inputs(const Setup& s, long m, const std::vector<int>& sigma, int count_s) {
  BoundInputs in;
  in.N = s.curve.N;
  in.m = m;
  in.mu = s.curve.mu;
  in.absG = s.curve.group_order;
  in.s = count_s;
  std::vector<int> seen;
  for (int c : sigma) {
    int o = s.orbits.orbit_of[c];
    if (std::find(seen.begin(), seen.end(), o) != seen.end()) continue;
    seen.push_back(o);
    in.sigma_profile.push_back({s.curve.cusps[c].width, static_cast<int>(s.orbits.orbits[o].size())});
  }
  return in;
}

int cmd_analyze(const Options& o) {
  Setup s = load_setup(o);
  int count_s = o.s.empty() ? 1 : o.s[0];
  Json doc;
  doc["input"] = input_json(s);
  doc["curve"] = curve_to_json(s.curve);
  doc["D_K"] = s.D;
  doc["orbits"] = orbits_to_json(s.orbits);
  bool holds = runge_condition(s.orbits.count(), count_s);
  doc["runge"] = Json{{"s", count_s}, {"orbit_count", s.orbits.count()}, {"holds", holds}};
  if (holds) {
    auto sigma = select_sigma(o, s, count_s);
    long m = compute_m(s.curve, sigma);
    auto dims = dimension_rr(s.curve, m, sigma);
    doc["sigma"] = sigma;
    doc["m"] = m;
    doc["k"] = 12 * m;
    doc["dimensions"] = Json{{"dim_M_over_Q", s.curve.kg_degree * dims.dim_M},
                             {"dim_W_lower_over_Q", s.curve.kg_degree * dims.dim_W_lower}};
    doc["bounds"] = bound_report_to_json(height_bound_chain(bound_inputs(s, m, sigma, count_s)));
  }
  stamp(doc, config_json("analyze", o, s.group_json), o.seed);
  emit(doc, o);
  return holds ? kExitOk : kExitNoRunge;
}

int cmd_construct(const Options& o) {
  Setup s = load_setup(o);
  if (s.curve.N > o.max_N && !o.allow_large)
    throw InputError("N = " + std::to_string(s.curve.N) + " exceeds the guard N <= " +
                     std::to_string(o.max_N) + "; pass --allow-large to override");
  int count_s = o.s.empty() ? 1 : o.s[0];
  if (!runge_condition(s.orbits.count(), count_s)) {
    std::cerr << "Runge condition fails: " << s.orbits.count() << " cusp orbits, s = " << count_s << "\n";
    return kExitNoRunge;
  }
  auto sigma = select_sigma(o, s, count_s);
  ConstructOptions opt;
  opt.basis.seed = o.seed;
  opt.basis.prec = o.prec;
  PhiCertificate cert = construct_certificate(s.G, s.curve, sigma, s.D, s.orbits, opt);
  Json doc = certificate_to_json(cert);
  doc["input"] = input_json(s);
  doc["log_u_l1"] = interval_to_json(Interval::from_mpz(cert.u_l1).log());
  stamp(doc, config_json("construct", o, s.group_json), o.seed);
  emit(doc, o);
  std::cout << "||u||_1 = " << cert.u_l1 << "  log calB = " << cert.bounds.log_calB.lo_d() << "\n";
  return cert.ok() ? kExitOk : kExitError;
}

int cmd_verify(const Options& o) {
  Json doc;
  bool ok = true;
  if (!o.input.empty()) {
    Json cj = read_json_file(o.input);
    PhiCertificate cert = certificate_from_json(cj);
    CheckList cl = recheck_certificate(cert);
    ok = all_pass(cl);
    doc["certificate"] = o.input;
    doc["checks"] = checks_to_json(cl);
  } else {
    std::vector<std::string> tags;
    std::stringstream ss(o.tags);
    std::string t;
    while (std::getline(ss, t, ','))
      if (!t.empty()) tags.push_back(t);
    Json rows = Json::array();
    for (const auto& r : run_suites(tags, o.seed)) {
      ok = ok && r.pass;
      rows.push_back(Json{{"tag", r.tag}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    doc["suites"] = rows;
  }
  doc["pass"] = ok;
  Json cfg{{"command", "verify"}, {"input", o.input}, {"tags", o.tags}, {"seed", o.seed}};
  stamp(doc, cfg, o.seed);
  emit(doc, o);
  return ok ? kExitOk : kExitError;
}

int cmd_compare(const Options& o) {
  std::vector<std::string> files = o.inputs;
  if (!o.input.empty()) files.insert(files.begin(), o.input);
  if (files.empty()) throw InputError("--input is required");
  std::vector<int> ss = o.s.empty() ? std::vector<int>{1} : o.s;
  Json rows = Json::array();
  Json groups = Json::array();
  for (const auto& f : files) {
    Options oi = o;
    oi.input = f;
    Setup s = load_setup(oi);
    groups.push_back(s.group_json);
    for (int sv : ss) {
      Json row;
      row["name"] = s.in.name.empty() ? f : s.in.name;
      row["N"] = s.curve.N;
      row["absG"] = s.curve.group_order;
      row["mu"] = s.curve.mu;
      row["s"] = sv;
      bool holds = runge_condition(s.orbits.count(), sv);
      row["runge"] = holds;
      Interval bp = bilu_parent_bound(s.curve.N, s.curve.group_order, sv);
      if (holds) {
        auto sigma = select_sigma(oi, s, sv);
        long m = compute_m(s.curve, sigma);
        BoundReport br = height_bound_chain(bound_inputs(s, m, sigma, sv));
        row["m"] = m;
        row["exact"] = br.height_exact.hi_d();
        row["poly"] = br.height_poly.hi_d();
        row["coarse"] = br.height_coarse.hi_d();
      } else {
        row["m"] = nullptr;
        row["exact"] = nullptr;
        row["poly"] = nullptr;
        row["coarse"] = nullptr;
      }
      row["bilu_parent"] = bp.hi_d();
      rows.push_back(row);
    }
  }
  Json cfg{{"command", "compare"}, {"groups", groups}, {"sigma", o.sigma}, {"K", o.K}, {"s", ss}};
  if (o.format == "json") {
    Json doc;
    doc["rows"] = rows;
    stamp(doc, cfg, o.seed);
    emit(doc, o);
    return kExitOk;
  }
  if (o.format != "csv") throw InputError("--format must be csv or json");
  std::ostringstream os;
  os << "# version " << kVersion << " config " << config_hash(cfg) << " seed " << o.seed << "\n";
  os << "name,N,absG,mu,s,runge,m,exact,poly,coarse,bilu_parent\n";
  auto cell = [](const Json& v) {
    if (v.is_null()) return std::string("NA");
    if (v.is_number_float()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6e", v.get<double>());
      return std::string(buf);
    }
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  for (const auto& r : rows) {
    bool first = true;
    for (const char* k : {"name", "N", "absG", "mu", "s", "runge", "m", "exact", "poly", "coarse", "bilu_parent"}) {
      os << (first ? "" : ",") << cell(r[k]);
      first = false;
    }
    os << "\n";
  }
  std::cout << os.str();
  if (!o.out.empty()) write_atomic(o.out, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runge-method modular curve toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "seed for randomized choices");
    c->add_option("--out", o.out, "output file (written atomically)");
  };
  auto add_group = [&](CLI::App* c) {
    c->add_option("--sigma", o.sigma, "auto or comma-separated orbit ids");
    c->add_option("--K", o.K, "KG, full, or generators of the unit subgroup fixing K")->expected(1, 64);
    c->add_option("--s", o.s, "|S|")->expected(1, 64);
    c->add_option("--prec", o.prec, "q_N precision of the basis (0 = Sturm)");
  };

  auto* analyze = app.add_subcommand("analyze", "curve invariants, Runge condition and bounds");
  analyze->add_option("--input", o.input, "group JSON")->required();
  add_group(analyze);
  add_common(analyze);

  auto* construct = app.add_subcommand("construct", "build a Runge function certificate");
  construct->add_option("--input", o.input, "group JSON")->required();
  construct->add_flag("--allow-large", o.allow_large, "lift the N guard");
  construct->add_option("--max-N", o.max_N, "largest N accepted without --allow-large");
  add_group(construct);
  add_common(construct);

  auto* verify = app.add_subcommand("verify", "run verification suites or recheck a certificate");
  verify->add_option("--input", o.input, "certificate JSON to recheck");
  verify->add_option("--tags", o.tags, "comma-separated suite tags (default: all)");
  add_common(verify);

  auto* compare = app.add_subcommand("compare", "bound comparison table");
  compare->add_option("--input", o.inputs, "group JSON files")->expected(1, 64);
  compare->add_option("--format", o.format, "csv or json");
  add_group(compare);
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*construct) return cmd_construct(o);
    if (*verify) return cmd_verify(o);
    if (*compare) return cmd_compare(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
