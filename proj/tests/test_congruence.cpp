#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "runge/congruence.hpp"
#include "runge/error.hpp"

using namespace runge;

namespace {

std::multiset<int> widths(const CurveData& c) {
  std::multiset<int> w;
  for (const auto& x : c.cusps) w.insert(x.width);
  return w;
}

CurveData synthetic_curve(int N, std::vector<int> w, long genus) {
  CurveData c;
  c.N = N;
  c.genus = genus;
  for (int x : w) {
    CuspData d;
    d.width = x;
    c.cusps.push_back(d);
  }
  return c;
}

}  // namespace

TEST(Closure, SmallOrders) {
  EXPECT_EQ(subgroup_closure(5, {}).order(), 1u);
  EXPECT_EQ(subgroup_closure(5, {mat_reduce(-1, 0, 0, -1, 5)}).order(), 2u);
  EXPECT_EQ(subgroup_closure(3, sl2_generators(3)).order(), 24u);
  EXPECT_EQ(subgroup_closure(7, gl2_generators(7)).order(), 48u * 42u);
}

TEST(Closure, IsAGroup) {
  auto G = subgroup_closure(6, borel_generators(6));
  for (const auto& x : G.elements()) {
    EXPECT_TRUE(G.contains(mat_inv(x, 6)));
    for (const auto& y : G.generators()) EXPECT_TRUE(G.contains(mat_mul(x, y, 6)));
  }
  std::set<int> dets;
  for (const auto& x : G.elements()) dets.insert(mat_det(x, 6));
  EXPECT_EQ(std::vector<int>(dets.begin(), dets.end()), G.det_image());
}

TEST(Closure, Errors) {
  EXPECT_THROW(subgroup_closure(2, {}), InputError);
  EXPECT_THROW(subgroup_closure(6, {mat_reduce(2, 0, 0, 1, 6)}), InputError);
}

TEST(Closure, AdjoinMinusIdentity) {
  auto G = subgroup_closure(7, {mat_reduce(1, 1, 0, 1, 7)});
  auto Gb = adjoin_minus_identity(G);
  EXPECT_EQ(Gb.order(), 2 * G.order());
  EXPECT_EQ(adjoin_minus_identity(Gb).order(), Gb.order());
  EXPECT_EQ(curve_invariants(G).mu, curve_invariants(Gb).mu);
}

TEST(Curve, FullGroupIsTheJLine) {
  for (int N : {3, 5, 8}) {
    auto c = curve_invariants(subgroup_closure(N, gl2_generators(N)));
    EXPECT_EQ(c.mu, 1);
    EXPECT_EQ(c.genus, 0);
    ASSERT_EQ(c.cusps.size(), 1u);
    EXPECT_EQ(c.cusps[0].width, 1);
  }
}

TEST(Curve, X0Of5) {
  auto c = curve_invariants(subgroup_closure(5, borel_generators(5)));
  EXPECT_EQ(c.mu, 6);
  EXPECT_EQ(c.genus, 0);
  EXPECT_EQ(widths(c), (std::multiset<int>{1, 5}));
  EXPECT_EQ(c.cusps[0].width, 1);
}

TEST(Curve, FullLevel7) {
  auto c = curve_invariants(subgroup_closure(7, split_diagonal_generators(7)));
  EXPECT_EQ(c.mu, 168);
  EXPECT_EQ(c.genus, 3);
  EXPECT_EQ(c.cusps.size(), 24u);
  for (const auto& x : c.cusps) EXPECT_EQ(x.width, 7);
  EXPECT_EQ(2 * c.mu, static_cast<long>(sl2_elements(7).size()));
}

// Closed form for groups whose intersection with SL2 is {+-I}.
TEST(Curve, GenusClosedForm) {
  for (int N = 3; N <= 12; ++N) {
    auto c = curve_invariants(subgroup_closure(N, split_diagonal_generators(N)));
    EXPECT_EQ(12 * N * (c.genus - 1), c.mu * (N - 6)) << N;
  }
}

TEST(Curve, WidthsAndIndex) {
  for (int N : {4, 5, 6, 8, 9}) {
    for (const auto& gens : {borel_generators(N), split_diagonal_generators(N)}) {
      auto c = curve_invariants(subgroup_closure(N, gens));
      long s = 0;
      for (const auto& x : c.cusps) {
        s += x.width;
        EXPECT_EQ(N % x.width, 0);
      }
      EXPECT_EQ(s, c.mu);
      EXPECT_EQ(static_cast<long>(sl2_elements(N).size()) % c.mu, 0);
      EXPECT_LE(2 * c.mu, static_cast<long>(N) * N * N);
      EXPECT_GE(c.genus, 0);
      EXPECT_EQ(12 * (c.genus - 1) + 3 * c.e2 + 4 * c.e3 + 6 * static_cast<long>(c.cusps.size()), c.mu);
    }
  }
}

TEST(Curve, WidthByConjugation) {
  auto G = adjoin_minus_identity(subgroup_closure(5, borel_generators(5)));
  EXPECT_EQ(cusp_width_by_conjugation(G, Mat2{}), 1);
  EXPECT_EQ(cusp_width_by_conjugation(G, mat_reduce(0, -1, 1, 0, 5)), 5);
}

TEST(Runge, Condition) {
  EXPECT_TRUE(runge_condition(2, 1));
  EXPECT_FALSE(runge_condition(1, 1));
  EXPECT_TRUE(runge_condition(12, 11));
  EXPECT_THROW(runge_condition(3, 0), InputError);
}

TEST(Runge, ComputeM) {
  auto x0 = curve_invariants(subgroup_closure(5, borel_generators(5)));
  EXPECT_EQ(compute_m(x0, {0}), 1);
  EXPECT_EQ(compute_m(x0, {1}), 1);
  EXPECT_EQ(compute_m(synthetic_curve(7, {7, 7}, 3), {0}), 1);
  EXPECT_EQ(compute_m(synthetic_curve(7, {7, 1, 1}, 3), {0}), 2);
  EXPECT_THROW(compute_m(x0, {0, 1}), InputError);
  EXPECT_THROW(compute_m(x0, {}), InputError);
}

TEST(Orbits, SyntheticValues) {
  // four cusps carrying zeta_5^e for e = 1, 2, 4, 3
  auto c = synthetic_curve(5, {5, 5, 5, 5}, 0);
  std::vector<std::vector<CycNum>> v;
  for (int e : {1, 2, 4, 3}) v.push_back({CycNum::zeta_power(5, e)});
  auto all = galois_orbits_of_cusps(c, {1, 2, 3, 4}, v);
  EXPECT_EQ(all.count(), 1);
  auto half = galois_orbits_of_cusps(c, {1, 4}, v);
  EXPECT_EQ(half.count(), 2);
  EXPECT_EQ(half.orbit_of[0], half.orbit_of[2]);
  auto none = galois_orbits_of_cusps(c, {1}, v);
  EXPECT_EQ(none.count(), 4);

  // a second family, different values, same partition
  std::vector<std::vector<CycNum>> v2;
  for (int e : {1, 2, 4, 3}) v2.push_back({CycNum::zeta_power(5, 2 * e) + CycNum(5, mpq_class(3))});
  EXPECT_EQ(galois_orbits_of_cusps(c, {1, 4}, v2).orbit_of, half.orbit_of);
}

TEST(Orbits, Errors) {
  auto c = synthetic_curve(5, {5, 5}, 0);
  std::vector<std::vector<CycNum>> same = {{CycNum(5, mpq_class(1))}, {CycNum(5, mpq_class(1))}};
  EXPECT_THROW(galois_orbits_of_cusps(c, {1}, same), Error);
  std::vector<std::vector<CycNum>> v = {{CycNum::zeta_power(5, 1)}, {CycNum(5, mpq_class(1))}};
  EXPECT_THROW(galois_orbits_of_cusps(c, {1, 4}, v), Error);
}

TEST(Cosets, RightCosetsPartitionGL2) {
  auto G = adjoin_minus_identity(subgroup_closure(5, borel_generators(5)));
  auto R = right_coset_representatives(G);
  EXPECT_EQ(R.size() * G.order(), gl2_elements(5).size());
  std::set<int> seen;
  for (const auto& x : R)
    for (const auto& g : G.elements()) EXPECT_TRUE(seen.insert(mat_code(mat_mul(g, x, 5), 5)).second);
}
