#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fbmhd/calculus.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/oracle.hpp"
#include "fbmhd/stepper.hpp"

using namespace fbmhd;

namespace {

StepConfig config(int n_r, double eps) {
  StepConfig c;
  c.n_r = n_r;
  c.n_theta = 2 * n_r;
  c.epsilon = eps;
  c.compute_energy = false;
  return c;
}

double max_diff(const VectorField& a, const VectorField& b) {
  double m = 0;
  for (int k = 0; k < a.size(); ++k) m = std::max({m, std::abs(a.x[k] - b.x[k]), std::abs(a.y[k] - b.y[k])});
  return m;
}

}  // namespace

TEST(Stepper, RotorIsFixedByEveryStage) {
  auto s = oracle::build(oracle::equilibrium_rotor(1.0), 24, 48);
  auto cfg = config(24, 1e-2);
  auto r = regularize_state(s, cfg);
  EXPECT_LT(max_diff(r.B, s.B), 1e-9);
  EXPECT_LT(l2_norm(r.v), 1e-9);
  auto t = euler_transport(r, cfg);
  EXPECT_LT(max_diff(t.B, s.B), 1e-9);
  EXPECT_LT(l2_norm(t.v), 1e-9);
  for (int j = 0; j < 48; ++j) EXPECT_NEAR(t.chart->R(j), 1.0, 1e-12);
}

TEST(Stepper, ZeroEpsilonIsIdentity) {
  auto s = oracle::build(oracle::perturbed_rotor(1.0, 0.05, 2), 24, 48);
  auto cfg = config(24, 0.0);
  auto r = regularize_state(s, cfg);
  EXPECT_EQ(max_diff(r.v, s.v), 0.0);
  auto t = euler_transport(r, cfg);
  EXPECT_EQ(max_diff(t.B, s.B), 0.0);
}

TEST(Stepper, TaylorViolationRaised) {
  StateConfig loose;
  loose.check_taylor = false;
  auto s = oracle::build(oracle::taylor_violating_rotation(1.0), 24, 48, loose);
  try {
    regularize_state(s, config(24, 1e-2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TaylorSignViolation);
  }
  EXPECT_THROW(step(s, config(24, 1e-2)), Error);
  auto log = run(s, 0.1, config(24, 1e-2));
  EXPECT_EQ(log.halt, HaltReason::TaylorSign);
  EXPECT_EQ(log.rows.size(), 1u);
}

TEST(Stepper, RigidTranslation) {
  StateConfig loose;
  loose.check_taylor = false;
  auto rec = oracle::equilibrium_rotor(1.0);
  rec.B = [](double, double) { return std::pair{0.0, 0.0}; };
  rec.v = [](double, double) { return std::pair{0.5, 0.0}; };
  auto s = oracle::build(rec, 24, 48, loose);
  auto cfg = config(24, 0.02);
  cfg.check_taylor = false;
  auto t = euler_transport(s, cfg);
  // centroid of the new domain
  double mx = 0, my = 0;
  for (int k = 0; k < t.chart->size(); ++k) {
    mx += t.chart->weight(k) * t.chart->x(k);
    my += t.chart->weight(k) * t.chart->y(k);
  }
  mx /= t.chart->area();
  my /= t.chart->area();
  EXPECT_NEAR(mx, 0.01, 1e-5);  // quadrature error of the area integral
  EXPECT_NEAR(my, 0.0, 1e-12);
  for (int k = 0; k < t.chart->size(); ++k) {
    EXPECT_NEAR(t.v.x[k], 0.5, 4e-4);
    EXPECT_NEAR(t.v.y[k], 0.0, 4e-4);
  }
}

TEST(Stepper, TransportedBoundary) {
  auto c = make_chart(build_surface(BoundarySeries::cosine(3, 0.05, 4), 0.3), 16, 32);
  auto eta = transported_boundary(*c, VectorField(c), 0.1);
  for (int j = 0; j < 32; ++j) EXPECT_NEAR(eta[j], c->R(j) - 1, 1e-13);
  auto flip = sample_vector(c, [](double, double y) { return std::pair{0.0, -2 * y}; });
  try {
    transported_boundary(*c, flip, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStarShaped);
  }
}

TEST(Stepper, RotorStepKeepsEnergy) {
  auto s = oracle::build(oracle::equilibrium_rotor(1.0), 24, 48);
  auto cfg = config(24, 1e-2);
  cfg.compute_energy = true;
  auto [s1, rep] = step(s, cfg);
  EXPECT_LE(rep.E3_after.total, rep.E3_before.total + 1e-6);
  EXPECT_LT(rep.boundary_displacement_sup, 1e-12);
  EXPECT_LT(rep.contract_residual, 1e-9);
}

TEST(Stepper, ContractConstantStable) {
  auto s = oracle::build(oracle::perturbed_rotor(1.0, 0.05, 2), 24, 48);
  auto [a, ra] = step(s, config(24, 1e-2));
  auto [b, rb] = step(s, config(24, 5e-3));
  ASSERT_GT(ra.contract_K, 0);
  const double q = ra.contract_K / rb.contract_K;
  EXPECT_GT(q, 0.25);
  EXPECT_LT(q, 4.0);
  EXPECT_LT(ra.div_residual_v, 1e-8);
  EXPECT_LT(ra.tangency_residual, 1e-8);
}

TEST(Stepper, RunBookkeeping) {
  auto s = oracle::build(oracle::equilibrium_rotor(1.0), 24, 48);
  auto cfg = config(24, 0.03);
  auto zero = run(s, 0.0, cfg);
  EXPECT_EQ(zero.rows.size(), 1u);
  EXPECT_EQ(zero.halt, HaltReason::None);
  EXPECT_TRUE(zero.snapshots.empty());
  auto log = run(s, 0.1, cfg, 2);
  ASSERT_EQ(log.rows.size(), 5u) << log.halt_message;  // 0.03 x 3 + 0.01
  EXPECT_DOUBLE_EQ(log.rows.back().t, 0.1);
  for (size_t i = 1; i < log.rows.size(); ++i) EXPECT_GT(log.rows[i].t, log.rows[i - 1].t);
  EXPECT_LT(log.rows.back().boundary_sup_disp, 1e-10);
  ASSERT_EQ(log.snapshots.size(), 3u);  // t = 0, 0.06, 0.1
  EXPECT_EQ(log.snapshots.back().first, 0.1);
  EXPECT_TRUE(self_convergence(s, 0.1, {0.01}, cfg).empty());
}

TEST(Stepper, RotorSelfConvergence) {
  auto s = oracle::build(oracle::equilibrium_rotor(1.0), 24, 48);
  auto rows = self_convergence(s, 0.04, {0.02, 0.01}, config(24, 0.02));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_LT(rows[0].d.total, 1e-8);
}
