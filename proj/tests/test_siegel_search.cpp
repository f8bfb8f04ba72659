#include <gtest/gtest.h>

#include "runge/error.hpp"
#include "runge/json_io.hpp"
#include "runge/siegel_search.hpp"

using namespace runge;

namespace {

struct Pair {
  Gl2Subgroup G;
  CurveData curve;
  FormEngine E;
  CuspOrbits orbits;
  std::vector<int> D;
  std::vector<int> sigma;
  explicit Pair(int N, const std::vector<Mat2>& gens)
      : G(subgroup_closure(N, gens)), curve(curve_invariants(G)), E(G) {
    D = G.det_image();
    orbits = compute_cusp_orbits(E, curve, D);
    sigma = orbits.orbits[orbits.orbit_of[0]];
  }
};

const PhiCertificate& x0_5_certificate() {
  static Pair p(5, borel_generators(5));
  static PhiCertificate cert = construct_certificate(p.G, p.curve, p.sigma, p.D, p.orbits);
  return cert;
}

}  // namespace

TEST(Psi, DeltaPowerInKernel) {
  Pair p(5, borel_generators(5));
  IntegralBasis B = build_basis(p.E, p.curve, 12);
  PsiSystem sys = assemble_psi(p.E, B, p.curve, p.sigma, 1);
  EXPECT_TRUE(sys.delta_in_kernel);
  EXPECT_EQ(sys.kernel_lower, 6);
  EXPECT_GE(static_cast<long>(sys.kernel.size()), sys.kernel_lower);
  for (const auto& u : sys.kernel)
    for (const auto& row : sys.matrix) {
      mpz_class s = 0;
      for (size_t i = 0; i < u.size(); ++i) s += row[i] * u[i];
      EXPECT_EQ(s, 0);
    }
}

TEST(Psi, DeltaDetection) {
  int N = 5;
  long prec = sturm_precision(N, 12);
  ZVec row = flatten(delta_power_series(N, 1, prec), prec);
  EXPECT_TRUE(proportional_to_delta(row, N, 1, prec));
  for (auto& x : row) x *= 3;
  EXPECT_TRUE(proportional_to_delta(row, N, 1, prec));
  row[euler_phi(N) * (prec - 1)] += 1;
  EXPECT_FALSE(proportional_to_delta(row, N, 1, prec));
}

TEST(Certificate, X0Of5) {
  const PhiCertificate& c = x0_5_certificate();
  for (const auto& [name, ok] : c.checks) EXPECT_TRUE(ok) << name;
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c.m, 1);
  EXPECT_EQ(c.basis_dim, 7);
  EXPECT_GE(c.kernel_dim, c.kernel_lower);
  EXPECT_TRUE(Interval::from_mpz(c.u_l1).log().le(c.bounds.log_calB));
  EXPECT_LE(c.phi.pole_total, 6);
  EXPECT_GE(c.phi.pole_total, 1);
  for (const auto& cp : c.phi.cusps) {
    if (cp.in_sigma) {
      EXPECT_GE(cp.ord, 0);
      EXPECT_TRUE(cp.value.is_rational());
      EXPECT_TRUE(cp.value.integral());
    }
  }
  // one factor per right coset of G in GL2(Z/5)
  EXPECT_EQ(c.q.degree, 6);
  ASSERT_EQ(c.q.coeffs.size(), 7u);
  EXPECT_EQ(c.q.coeffs[6], (std::vector<mpz_class>{1}));
}

TEST(Certificate, RoundTripAndRecheck) {
  const PhiCertificate& c = x0_5_certificate();
  Json j = certificate_to_json(c);
  PhiCertificate back = certificate_from_json(j);
  // bounds and check results are derived data and are recomputed, not read back
  Json jb = certificate_to_json(back);
  for (const char* key : {"bounds", "checks", "ok"}) {
    jb.erase(key);
    j.erase(key);
  }
  EXPECT_EQ(jb.dump(), j.dump());
  CheckList rc = recheck_certificate(back);
  for (const auto& [name, ok] : rc) EXPECT_TRUE(ok) << name;

  PhiCertificate bad = back;
  for (auto& cp : bad.phi.cusps)
    if (cp.in_sigma) cp.value += CycNum(5, mpq_class(1));
  EXPECT_FALSE(all_pass(recheck_certificate(bad)));

  PhiCertificate bad_q = back;
  bad_q.q.coeffs[0][0] += 1;
  EXPECT_FALSE(all_pass(recheck_certificate(bad_q)));
}

TEST(Certificate, Deterministic) {
  Pair p(5, borel_generators(5));
  PhiCertificate again = construct_certificate(p.G, p.curve, p.sigma, p.D, p.orbits);
  EXPECT_EQ(certificate_to_json(again).dump(), certificate_to_json(x0_5_certificate()).dump());
}

TEST(Certificate, OtherBorelLevels) {
  for (int N : {4, 6}) {
    Pair p(N, borel_generators(N));
    PhiCertificate c = construct_certificate(p.G, p.curve, p.sigma, p.D, p.orbits);
    for (const auto& [name, ok] : c.checks) EXPECT_TRUE(ok) << N << " " << name;
    EXPECT_EQ(c.m, 1);
  }
}

TEST(Certificate, BadCuspSets) {
  Pair p(5, borel_generators(5));
  EXPECT_THROW(construct_certificate(p.G, p.curve, {0, 1}, p.D, p.orbits), InputError);
  EXPECT_THROW(construct_certificate(p.G, p.curve, {}, p.D, p.orbits), InputError);
  Pair s(5, split_diagonal_generators(5));
  std::vector<int> big;
  for (const auto& o : s.orbits.orbits)
    if (o.size() > big.size()) big = o;
  ASSERT_GT(big.size(), 1u);
  EXPECT_THROW(construct_certificate(s.G, s.curve, {big[0]}, s.D, s.orbits), InputError);
}
