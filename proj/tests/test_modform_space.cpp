#include <gtest/gtest.h>

#include "runge/modform_space.hpp"

using namespace runge;

namespace {

struct Level {
  Gl2Subgroup G;
  CurveData curve;
  FormEngine E;
  explicit Level(int N, const std::vector<Mat2>& gens)
      : G(subgroup_closure(N, gens)), curve(curve_invariants(G)), E(G) {}
};

}  // namespace

TEST(Sturm, Precision) {
  EXPECT_EQ(sturm_precision(5, 12), 61);  // mubar = 60
  EXPECT_EQ(sturm_precision(3, 12), 13);
  EXPECT_EQ(sturm_precision(4, 2), 5);
}

TEST(Dimensions, ClassicalTables) {
  // dim M_k(SL2(Z)): 1, 1, 1, 2 for k = 4, 6, 10, 12
  Level full(5, gl2_generators(5));
  EXPECT_EQ(dimension_weight_k(full.curve, 12), 2);
  // dim M_12(Gamma_0(5)) = 7, dim M_2(Gamma_0(5)) = 1
  Level x0(5, borel_generators(5));
  EXPECT_EQ(dimension_weight_k(x0.curve, 12), 7);
  EXPECT_EQ(dimension_weight_k(x0.curve, 2), 1);
  auto rr = dimension_rr(x0.curve, 1, {0});
  EXPECT_EQ(rr.dim_M, 7);
  EXPECT_EQ(rr.dim_W_lower, 6);
}

TEST(TraceForm, OddWeightVanishes) {
  Level s(5, borel_generators(5));
  auto f = ModFormExpr::trace(5, TraceTerm{0, {{1, 2}, {0, 1}, {3, 3}}});
  EXPECT_TRUE(f.expand(s.E, Mat2{}, 30).is_zero());
}

TEST(TraceForm, PlusMinusIdentityGroup) {
  int N = 5;
  Level s(N, {mat_reduce(-1, 0, 0, -1, N)});
  std::vector<EisIndex> idx = {{1, 2}, {2, 0}};
  auto f = ModFormExpr::trace(N, TraceTerm{0, idx});
  IntSeries got = f.expand(s.E, Mat2{}, 25);
  IntSeries want = scaled_product(N, idx, 25);
  int_scale(want, 2);
  for (long n = 0; n < 25; ++n) EXPECT_EQ(got.coeff(n), want.coeff(n));
}

TEST(Expansion, CuspGridAndValence) {
  Level s(5, borel_generators(5));
  BasisOptions opt;
  IntegralBasis B = build_basis(s.E, s.curve, 12, opt);
  ASSERT_EQ(B.d, 7);
  EXPECT_EQ(bareiss_rank(B.rows), 7);
  for (const auto& f : B.forms) {
    long total = 0;
    for (size_t c = 0; c < s.curve.cusps.size(); ++c) {
      QExp e = expansion_at_cusp(s.E, f, s.curve, static_cast<int>(c), 40);
      EXPECT_EQ(e.width(), s.curve.cusps[c].width);
      auto nu = nu_at_cusp(s.E, f, s.curve, static_cast<int>(c));
      ASSERT_TRUE(nu);
      total += *nu;
    }
    EXPECT_LE(total, 12 * s.curve.mu / 12);
  }
}

TEST(Basis, ContainsDeltaAndIsDeterministic) {
  Level s(5, borel_generators(5));
  IntegralBasis B = build_basis(s.E, s.curve, 12);
  auto coords = coordinates_in_basis(B, delta_power_series(5, 1, B.prec));
  EXPECT_TRUE(coords);
  IntegralBasis B2 = build_basis(s.E, s.curve, 12);
  EXPECT_EQ(B.rows, B2.rows);
  // Delta^2 has weight 24
  EXPECT_FALSE(coordinates_in_basis(B, delta_power_series(5, 2, B.prec)));
}

TEST(Basis, FullGroupDimension) {
  Level s(3, gl2_generators(3));
  IntegralBasis B = build_basis(s.E, s.curve, 12);
  EXPECT_EQ(B.d, 2);
}

TEST(Basis, SmallBasisBound) {
  Level s(4, borel_generators(4));
  IntegralBasis B = build_basis(s.E, s.curve, 12);
  EXPECT_EQ(B.d, 7);
  BoundCheck b = verify_small_basis_bound(s.E, B, s.curve);
  EXPECT_GT(b.coefficients, 0);
  EXPECT_EQ(b.violations, 0);
}

TEST(Orbits, IndependentOfFamily) {
  Level s(5, split_diagonal_generators(5));
  auto D = s.G.det_image();
  auto a = compute_cusp_orbits(s.E, s.curve, D, 7);
  auto b = compute_cusp_orbits(s.E, s.curve, D, 1234);
  EXPECT_EQ(a.orbit_of, b.orbit_of);
  EXPECT_EQ(a.count(), 5);
  EXPECT_EQ(compute_cusp_orbits(s.E, s.curve, {1}, 7).count(),
            static_cast<int>(s.curve.cusps.size()));

  Level x0(5, borel_generators(5));
  EXPECT_EQ(compute_cusp_orbits(x0.E, x0.curve, x0.G.det_image()).count(), 2);
}
