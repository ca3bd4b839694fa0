#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fbmhd/calculus.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/oracle.hpp"
#include "fbmhd/state.hpp"

using namespace fbmhd;
constexpr double pi = std::numbers::pi;

namespace {
double bmax(const BoundaryFn& g) { return max_abs(g); }
}  // namespace

TEST(State, RotorAssembly) {
  auto r = oracle::equilibrium_rotor(1.0);
  auto s = oracle::build(r, 32, 64);
  EXPECT_LT(max_abs(s.P - sample_scalar(s.chart, r.P)), 1e-12);
  for (double a : s.a.v) EXPECT_NEAR(a, 1.0, 1e-12);
  EXPECT_LT(max_abs(s.omega_p - ScalarField(s.chart, 2.0)), 1e-11);
  EXPECT_LT(max_abs(s.omega_m - ScalarField(s.chart, -2.0)), 1e-11);
  EXPECT_LT(l2_norm(s.Wp - s.B), 1e-12);
  EXPECT_LT(l2_norm(s.Wm + s.B), 1e-12);
  // Elsasser variables recover v and B exactly
  EXPECT_EQ(l2_norm(0.5 * (s.Wp + s.Wm) - s.v), 0.0);
  EXPECT_LT(l2_norm(0.5 * (s.Wp - s.Wm) - s.B), 1e-15);
}

TEST(State, RotorScalesWithAmplitude) {
  auto s = oracle::build(oracle::equilibrium_rotor(2.0), 24, 48);
  for (double a : s.a.v) EXPECT_NEAR(a, 4.0, 1e-11);
  EXPECT_LT(oracle::rotor_momentum_residual(2.0), 1e-10);
}

TEST(State, TaylorSignViolations) {
  try {
    oracle::build(oracle::taylor_violating_rotation(1.0), 24, 48);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TaylorSignViolation);
  }
  try {
    oracle::build(oracle::taylor_violating_rotation(0.0), 24, 48);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TaylorSignViolation);
  }
  StateConfig cfg;
  cfg.check_taylor = false;
  auto s = oracle::build(oracle::taylor_violating_rotation(1.0), 24, 48, cfg);
  for (double a : s.a.v) EXPECT_NEAR(a, -1.0, 1e-8);
}

TEST(State, RejectsFieldsOnAnotherChart) {
  auto r = oracle::equilibrium_rotor(1.0);
  auto c1 = make_chart(r.surface, 16, 32), c2 = make_chart(r.surface, 16, 32);
  EXPECT_THROW(assemble(c1, VectorField(c2), sample_vector(c1, r.B)), Error);
}

TEST(State, MaterialPressure) {
  auto s = oracle::build(oracle::equilibrium_rotor(1.0), 32, 64);
  auto m = material_pressure(s);
  EXPECT_LT(max_abs(m.plus), 1e-9);
  EXPECT_LT(max_abs(m.minus), 1e-9);

  StateConfig cfg;
  cfg.check_taylor = false;
  auto z = oracle::build(oracle::taylor_violating_rotation(0.0), 16, 32, cfg);
  auto mz = material_pressure(z);
  EXPECT_EQ(max_abs(mz.plus), 0.0);

  auto st = oracle::build(oracle::irrotational_strain(0.3), 24, 48);
  auto ms = material_pressure(st);
  EXPECT_EQ(max_abs(ms.plus - ms.minus), 0.0);
}

TEST(State, GoodVariablesOfRotorVanish) {
  auto s = oracle::build(oracle::equilibrium_rotor(1.0), 32, 64);
  EXPECT_LT(bmax(s.G_p), 1e-9);
  EXPECT_LT(bmax(s.G_m), 1e-9);
  EXPECT_LT(bmax(s.grad_B_a), 1e-10);
}

TEST(State, Diagnostics) {
  auto s = oracle::build(oracle::equilibrium_rotor(1.0), 64, 64);
  auto d = diagnostics(s);
  EXPECT_NEAR(d.total_energy, pi / 4, 2e-4);
  EXPECT_LT(d.tangency_residual, 1e-12);
  EXPECT_LT(d.div_residual_v, 1e-12);
  EXPECT_LT(d.div_residual_B, 1e-10);
  EXPECT_NEAR(d.a_min, 1.0, 1e-12);
}

TEST(State, EnergyQuadratureConverges) {
  double prev = 0;
  for (int n : {16, 32, 64}) {
    auto d = diagnostics(oracle::build(oracle::equilibrium_rotor(1.0), n, n));
    const double e = std::abs(d.total_energy - pi / 4);
    if (prev > 0) EXPECT_GT(prev / e, 3.0);
    prev = e;
  }
}

TEST(State, PerturbedRotorConstraints) {
  auto s = oracle::build(oracle::perturbed_rotor(1.0, 0.05, 2), 24, 48);
  auto d = diagnostics(s);
  EXPECT_LT(d.tangency_residual, 1e-12);
  EXPECT_LT(d.div_residual_v, 1e-10);
  EXPECT_LT(d.div_residual_B, 1e-10);
  EXPECT_GT(d.a_min, 0.5);
}

TEST(State, CurvaturePressureIdentityConverges) {
  auto r = oracle::perturbed_rotor(1.0, 0.05, 2);
  r.surface = build_surface(BoundarySeries::cosine(2, 0.05, 4), 0.3);
  double prev = 0;
  for (int n : {16, 32, 64}) {
    auto s = oracle::build(r, n, 2 * n);
    const double e = boundary_l2_norm(curvature_pressure_residual(s), *s.chart);
    if (prev > 0) EXPECT_GT(prev / e, 2.5) << n;
    prev = e;
  }
}
