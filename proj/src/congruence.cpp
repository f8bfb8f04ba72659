#include "runge/congruence.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "runge/error.hpp"

namespace runge {

bool Mat2::operator<(const Mat2& o) const {
  return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
}

static int md(long x, int N) {
  long r = x % N;
  return static_cast<int>(r < 0 ? r + N : r);
}

Mat2 mat_reduce(long a, long b, long c, long d, int N) {
  return {md(a, N), md(b, N), md(c, N), md(d, N)};
}

Mat2 mat_mul(const Mat2& x, const Mat2& y, int N) {
  return mat_reduce(static_cast<long>(x.a) * y.a + static_cast<long>(x.b) * y.c,
                    static_cast<long>(x.a) * y.b + static_cast<long>(x.b) * y.d,
                    static_cast<long>(x.c) * y.a + static_cast<long>(x.d) * y.c,
                    static_cast<long>(x.c) * y.b + static_cast<long>(x.d) * y.d, N);
}

int mat_det(const Mat2& x, int N) {
  return md(static_cast<long>(x.a) * x.d - static_cast<long>(x.b) * x.c, N);
}

static int inv_mod(int a, int N) {
  long t = 0, nt = 1, r = N, nr = md(a, N);
  while (nr) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw InputError("element is not invertible mod N");
  return md(t, N);
}

Mat2 mat_inv(const Mat2& x, int N) {
  int di = inv_mod(mat_det(x, N), N);
  return mat_reduce(static_cast<long>(x.d) * di, -static_cast<long>(x.b) * di,
                    -static_cast<long>(x.c) * di, static_cast<long>(x.a) * di, N);
}

Mat2 mat_neg(const Mat2& x, int N) { return mat_reduce(-x.a, -x.b, -x.c, -x.d, N); }

int mat_code(const Mat2& x, int N) { return ((x.a * N + x.b) * N + x.c) * N + x.d; }

Mat2 mat_from_code(int code, int N) {
  Mat2 m;
  m.d = code % N;
  code /= N;
  m.c = code % N;
  code /= N;
  m.b = code % N;
  m.a = code / N;
  return m;
}

std::string mat_str(const Mat2& x) {
  std::ostringstream os;
  os << "[" << x.a << "," << x.b << "," << x.c << "," << x.d << "]";
  return os.str();
}

std::vector<Mat2> gl2_elements(int N) {
  std::vector<Mat2> out;
  for (int code = 0; code < N * N * N * N; ++code) {
    Mat2 m = mat_from_code(code, N);
    if (std::gcd(mat_det(m, N), N) == 1) out.push_back(m);
  }
  return out;
}

std::vector<Mat2> sl2_elements(int N) {
  std::vector<Mat2> out;
  for (int code = 0; code < N * N * N * N; ++code) {
    Mat2 m = mat_from_code(code, N);
    if (mat_det(m, N) == 1 % N) out.push_back(m);
  }
  return out;
}

bool Gl2Subgroup::contains_minus_identity() const {
  return contains(mat_reduce(-1, 0, 0, -1, N_));
}

Gl2Subgroup subgroup_closure(int N, const std::vector<Mat2>& gens) {
  if (N <= 2) throw InputError("N>2 required");
  Gl2Subgroup G;
  G.N_ = N;
  for (const auto& g : gens) {
    Mat2 r = mat_reduce(g.a, g.b, g.c, g.d, N);
    if (std::gcd(mat_det(r, N), N) != 1)
      throw InputError("generator " + mat_str(r) + " is not invertible mod N");
    G.gens_.push_back(r);
  }
  G.member_.assign(static_cast<size_t>(N) * N * N * N, 0);
  Mat2 id;
  std::vector<Mat2> frontier = {id};
  G.member_[mat_code(id, N)] = 1;
  G.elems_.push_back(id);
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const auto& x : frontier)
      for (const auto& g : G.gens_) {
        Mat2 y = mat_mul(x, g, N);
        int code = mat_code(y, N);
        if (!G.member_[code]) {
          G.member_[code] = 1;
          G.elems_.push_back(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  std::sort(G.elems_.begin(), G.elems_.end());
  std::set<int> dets;
  for (const auto& x : G.elems_) dets.insert(mat_det(x, N));
  G.dets_.assign(dets.begin(), dets.end());
  return G;
}

Gl2Subgroup adjoin_minus_identity(const Gl2Subgroup& G) {
  if (G.contains_minus_identity()) return G;
  auto gens = G.generators();
  gens.push_back(mat_reduce(-1, 0, 0, -1, G.level()));
  return subgroup_closure(G.level(), gens);
}

static std::vector<int> unit_list(int N) {
  std::vector<int> u;
  for (int k = 1; k < N; ++k)
    if (std::gcd(k, N) == 1) u.push_back(k);
  return u;
}

std::vector<Mat2> sl2_generators(int N) {
  return {mat_reduce(1, 1, 0, 1, N), mat_reduce(0, -1, 1, 0, N)};
}

std::vector<Mat2> gl2_generators(int N) {
  auto g = sl2_generators(N);
  for (int d : unit_list(N)) g.push_back(mat_reduce(1, 0, 0, d, N));
  return g;
}

std::vector<Mat2> borel_generators(int N) {
  std::vector<Mat2> g = {mat_reduce(1, 1, 0, 1, N), mat_reduce(-1, 0, 0, -1, N)};
  for (int d : unit_list(N)) {
    g.push_back(mat_reduce(d, 0, 0, 1, N));
    g.push_back(mat_reduce(1, 0, 0, d, N));
  }
  return g;
}

std::vector<Mat2> split_diagonal_generators(int N) {
  std::vector<Mat2> g = {mat_reduce(-1, 0, 0, -1, N)};
  for (int d : unit_list(N)) g.push_back(mat_reduce(1, 0, 0, d, N));
  return g;
}

int CurveData::cusp_of(const Mat2& A) const {
  int code = mat_code(A, N);
  if (code < 0 || code >= static_cast<int>(coset_of.size()) || coset_of[code] < 0)
    throw InputError("matrix " + mat_str(A) + " is not in SL2(Z/N)");
  return cusp_of_coset[coset_of[code]];
}

long CurveData::width_sum(const std::vector<int>& ids) const {
  long s = 0;
  for (int i : ids) s += cusps.at(i).width;
  return s;
}

CurveData curve_invariants(const Gl2Subgroup& G0) {
  int N = G0.level();
  if (N <= 2) throw InputError("N>2 required");
  Gl2Subgroup G = adjoin_minus_identity(G0);
  CurveData cd;
  cd.N = N;
  cd.group_order = static_cast<long>(G.order());
  cd.det_image = G.det_image();
  cd.kg_degree = euler_phi(N) / static_cast<int>(cd.det_image.size());

  std::vector<Mat2> gamma;  // G intersect SL2
  for (const auto& g : G.elements())
    if (mat_det(g, N) == 1) gamma.push_back(g);

  auto sl2 = sl2_elements(N);  // lexicographic order
  cd.coset_of.assign(static_cast<size_t>(N) * N * N * N, -1);
  std::vector<Mat2> reps;
  for (const auto& x : sl2) {
    if (cd.coset_of[mat_code(x, N)] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (const auto& g : gamma) cd.coset_of[mat_code(mat_mul(g, x, N), N)] = id;
  }
  cd.mu = static_cast<long>(reps.size());

  auto act = [&](const Mat2& M) {
    std::vector<int> p(reps.size());
    for (size_t i = 0; i < reps.size(); ++i) p[i] = cd.coset_of[mat_code(mat_mul(reps[i], M, N), N)];
    return p;
  };
  auto pT = act(mat_reduce(1, 1, 0, 1, N));
  auto pS = act(mat_reduce(0, -1, 1, 0, N));
  auto pST = act(mat_reduce(0, -1, 1, 1, N));
  for (size_t i = 0; i < reps.size(); ++i) {
    if (pS[i] == static_cast<int>(i)) ++cd.e2;
    if (pST[i] == static_cast<int>(i)) ++cd.e3;
  }

  // T-orbits on cosets are the cusps.
  cd.cusp_of_coset.assign(reps.size(), -1);
  std::vector<CuspData> cusps;
  for (size_t i = 0; i < reps.size(); ++i) {
    if (cd.cusp_of_coset[i] >= 0) continue;
    CuspData c;
    int j = static_cast<int>(i);
    do {
      c.cosets.push_back(j);
      cd.cusp_of_coset[j] = static_cast<int>(cusps.size());
      j = pT[j];
    } while (j != static_cast<int>(i));
    c.width = static_cast<int>(c.cosets.size());
    cusps.push_back(std::move(c));
  }
  // representative: least SL2 element lying in one of the cosets
  std::vector<bool> have(cusps.size(), false);
  for (const auto& x : sl2) {
    int cu = cd.cusp_of_coset[cd.coset_of[mat_code(x, N)]];
    if (!have[cu]) {
      cusps[cu].rep = x;
      have[cu] = true;
    }
  }
  int inf = cd.cusp_of_coset[cd.coset_of[mat_code(Mat2{}, N)]];
  std::vector<int> order(cusps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if ((x == inf) != (y == inf)) return x == inf;
    return cusps[x].rep < cusps[y].rep;
  });
  std::vector<int> newid(cusps.size());
  for (size_t k = 0; k < order.size(); ++k) {
    newid[order[k]] = static_cast<int>(k);
    cd.cusps.push_back(cusps[order[k]]);
  }
  for (auto& v : cd.cusp_of_coset) v = newid[v];
  // Force the cusp at infinity to use the identity as representative.
  cd.cusps[0].rep = Mat2{};

  long twelve_g = 12 + cd.mu - 3L * cd.e2 - 4L * cd.e3 - 6L * static_cast<long>(cd.cusps.size());
  if (twelve_g % 12 != 0 || twelve_g < 0) throw Error("genus formula produced a non-integer");
  cd.genus = twelve_g / 12;
  return cd;
}

int cusp_width_by_conjugation(const Gl2Subgroup& G, const Mat2& A) {
  int N = G.level();
  Mat2 Ai = mat_inv(A, N);
  for (int j = 1; j <= N; ++j) {
    Mat2 x = mat_mul(mat_mul(A, mat_reduce(1, j, 0, 1, N), N), Ai, N);
    if (G.contains(x)) return j;
  }
  throw Error("no width found");
}

CuspOrbits galois_orbits_of_cusps(const CurveData& curve, const std::vector<int>& D,
                                  const std::vector<std::vector<CycNum>>& vals) {
  size_t nc = curve.cusps.size();
  if (vals.size() != nc) throw InputError("one value vector per cusp required");
  auto key = [](const std::vector<CycNum>& v) {
    std::string s;
    for (const auto& x : v) s += x.str() + ";";
    return s;
  };
  std::map<std::string, int> where;
  for (size_t i = 0; i < nc; ++i) {
    if (!where.emplace(key(vals[i]), static_cast<int>(i)).second)
      throw Error("values do not separate cusps");
  }
  CuspOrbits out;
  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (int d : D) {
    std::vector<int> perm(nc, -1);
    std::vector<bool> hit(nc, false);
    for (size_t i = 0; i < nc; ++i) {
      std::vector<CycNum> img;
      for (const auto& x : vals[i]) img.push_back(galois_apply(d, x));
      auto it = where.find(key(img));
      if (it == where.end()) throw Error("Galois image of a cusp value vector matches no cusp");
      perm[i] = it->second;
      if (hit[it->second]) throw Error("Galois action on cusps is not a permutation");
      hit[it->second] = true;
      parent[find(static_cast<int>(i))] = find(it->second);
    }
    out.action[d] = perm;
  }
  // group-action sanity: sigma_d sigma_e = sigma_{de}
  int N = curve.N;
  for (int d : D)
    for (int e : D) {
      int de = static_cast<int>((static_cast<long>(d) * e) % N);
      auto it = out.action.find(de);
      if (it == out.action.end()) throw InputError("D is not closed under multiplication");
      for (size_t i = 0; i < nc; ++i)
        if (out.action[d][out.action[e][i]] != it->second[i])
          throw Error("cusp permutations do not form a group action");
    }
  out.orbit_of.assign(nc, -1);
  for (size_t i = 0; i < nc; ++i) {
    int r = find(static_cast<int>(i));
    if (out.orbit_of[r] < 0) {
      out.orbit_of[r] = static_cast<int>(out.orbits.size());
      out.orbits.push_back({});
    }
    out.orbit_of[i] = out.orbit_of[r];
    out.orbits[out.orbit_of[i]].push_back(static_cast<int>(i));
  }
  for (const auto& orb : out.orbits)
    for (int c : orb)
      if (curve.cusps[c].width != curve.cusps[orb[0]].width)
        throw Error("cusps in one Galois orbit have different widths");
  return out;
}

bool runge_condition(int orbit_count, int s) {
  if (s < 1) throw InputError("|S| must be at least 1");
  return s < orbit_count;
}

long compute_m(const CurveData& curve, const std::vector<int>& sigma) {
  std::set<int> in(sigma.begin(), sigma.end());
  if (in.empty()) throw InputError("cusp set must be nonempty");
  std::vector<int> rest;
  for (size_t i = 0; i < curve.cusps.size(); ++i)
    if (!in.count(static_cast<int>(i))) rest.push_back(static_cast<int>(i));
  if (rest.empty()) throw InputError("cusp set must be a proper subset of the cusps");
  long ws = curve.width_sum(rest);
  long m = curve.genus / ws + 1;
  long n3 = static_cast<long>(curve.N) * curve.N * curve.N;
  if (24 * m > n3) throw Error("m exceeds N^3/24");
  return m;
}

std::vector<Mat2> right_coset_representatives(const Gl2Subgroup& G) {
  int N = G.level();
  std::vector<char> seen(static_cast<size_t>(N) * N * N * N, 0);
  std::vector<Mat2> reps;
  for (const auto& x : gl2_elements(N)) {
    if (seen[mat_code(x, N)]) continue;
    reps.push_back(x);
    for (const auto& g : G.elements()) seen[mat_code(mat_mul(g, x, N), N)] = 1;
  }
  return reps;
}

}  // namespace runge
