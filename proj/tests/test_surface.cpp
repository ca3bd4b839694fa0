#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fbmhd/chart.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/surface.hpp"

using namespace fbmhd;
constexpr double pi = std::numbers::pi;

namespace {
BoundarySeries random_series(int M, double amp, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  BoundarySeries b(M);
  for (int k = 1; k <= M; ++k) b.set_coeff(k, amp / (k * k) * std::complex<double>(d(gen), d(gen)));
  return b;
}
}  // namespace

TEST(BoundarySeries, HermitianAndRoundTrip) {
  auto b = random_series(6, 0.05, 3);
  EXPECT_LE(b.hermitian_defect(), 1e-15);
  auto vals = b.sample(64);
  auto back = BoundarySeries::from_samples(vals, 6);
  for (int k = -6; k <= 6; ++k) EXPECT_NEAR(std::abs(back.coeff(k) - b.coeff(k)), 0.0, 1e-14);
  for (int j = 0; j < 64; ++j) EXPECT_NEAR(vals[j], b(2 * pi * j / 64), 1e-13);
}

TEST(BoundarySeries, DerivativeSamplesMatchPointwise) {
  auto b = random_series(5, 0.1, 11);
  auto d2 = b.sample(32, 2);
  for (int j = 0; j < 32; ++j) EXPECT_NEAR(d2[j], b(2 * pi * j / 32, 2), 1e-12);
}

TEST(SurfaceGraph, UnitCircle) {
  auto s = build_surface(BoundarySeries::constant(0.0), 0.3);
  auto nc = normal_and_curvature(s, 16);
  EXPECT_NEAR(nc.nx[0], 1.0, 1e-15);
  EXPECT_NEAR(nc.ny[0], 0.0, 1e-15);
  for (double k : nc.kappa) EXPECT_NEAR(k, 1.0, 1e-14);
}

TEST(SurfaceGraph, ShiftedCosineBoundaryPoint) {
  auto s = build_surface(BoundarySeries::cosine(1, 0.1, 1), 0.3);
  auto c = make_chart(s, 8, 16);
  const int k = c->idx(c->boundary_ring(), 0);
  EXPECT_NEAR(c->x(k), 1.1, 1e-15);
  EXPECT_NEAR(c->y(k), 0.0, 1e-15);
}

TEST(SurfaceGraph, CollarViolation) {
  try {
    build_surface(BoundarySeries::constant(0.5), 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CollarViolation);
  }
}

TEST(SurfaceGraph, CurvatureOfCircleAndCosine) {
  auto s = build_surface(BoundarySeries::constant(0.2), 0.3);
  for (double k : normal_and_curvature(s, 8).kappa) EXPECT_NEAR(k, 1.0 / 1.2, 1e-14);
  auto s2 = build_surface(BoundarySeries::cosine(2, 0.1, 2), 0.3);
  // r = 1.1, r' = 0, r'' = -0.4 at theta = 0
  EXPECT_NEAR(normal_and_curvature(s2, 8).kappa[0], 1.65 / std::pow(1.1, 3), 1e-13);
}

TEST(SurfaceGraph, UnitNormals) {
  auto s = build_surface(random_series(8, 0.05, 5), 0.3);
  auto nc = normal_and_curvature(s, 64);
  for (int j = 0; j < 64; ++j) EXPECT_NEAR(std::hypot(nc.nx[j], nc.ny[j]), 1.0, 1e-14);
}

TEST(HeatRegularize, MultiplierAndContainment) {
  const double delta = 0.2;
  auto s = build_surface(BoundarySeries::cosine(3, 0.05, 4), 0.3);
  auto r = heat_regularize(s, delta);
  EXPECT_NEAR(std::abs(r.eta.coeff(3)), 0.025 * std::exp(-delta * delta * 9), 1e-15);
  auto a = s.eta.sample(512), b = r.eta.sample(512);
  for (int j = 0; j < 512; ++j) EXPECT_LE(b[j], a[j] + 1e-15);
  auto unshifted = r.eta;
  unshifted.set_coeff(0, s.eta.coeff(0));
  for (double sval : {0.0, 1.0, 2.5}) EXPECT_LE(surface_norm(unshifted, sval), surface_norm(s.eta, sval));
}

TEST(HeatRegularize, ConstantsAndIdentity) {
  auto s = build_surface(BoundarySeries::constant(0.1, 3), 0.3);
  auto r = heat_regularize(s, 0.3);
  EXPECT_NEAR(r.eta.coeff(0).real(), 0.1, 1e-15);
  auto s2 = build_surface(random_series(5, 0.03, 9), 0.3);
  auto r2 = heat_regularize(s2, 0.0);
  for (int k = -5; k <= 5; ++k) EXPECT_EQ(r2.eta.coeff(k), s2.eta.coeff(k));
}

TEST(Intersect, MasksAndCommutativity) {
  auto a = build_surface(BoundarySeries::constant(0.0), 0.3);
  auto b = build_surface(BoundarySeries::constant(-0.1), 0.3);
  auto m = intersect(a, b, 16);
  for (int j = 0; j < 16; ++j) {
    EXPECT_NEAR(m.eta_min[j], -0.1, 1e-15);
    EXPECT_FALSE(m.mask_A[j]);
    EXPECT_TRUE(m.mask_Ah[j]);
  }
  auto c = build_surface(BoundarySeries::cosine(1, 0.05, 1), 0.3);
  auto m2 = intersect(c, a, 32);
  auto m3 = intersect(a, c, 32);
  for (int j = 0; j < 32; ++j) {
    const double ct = std::cos(2 * pi * j / 32);
    if (std::abs(ct) > 1e-9) EXPECT_EQ(bool(m2.mask_A[j]), ct < 0);
    EXPECT_EQ(m2.eta_min[j], m3.eta_min[j]);
    EXPECT_EQ(m2.mask_A[j], m3.mask_Ah[j]);
    EXPECT_EQ(m2.mask_A[j] + m2.mask_Ah[j] + m2.mask_common[j], 1);
  }
  auto m4 = intersect(c, c, 8);
  for (int j = 0; j < 8; ++j) EXPECT_TRUE(m4.mask_common[j]);
}

TEST(SurfaceNorm, Values) {
  EXPECT_NEAR(surface_norm(BoundarySeries::constant(3.0), 2.0), 3.0 * std::sqrt(2 * pi), 1e-13);
  // cos(theta) in H^1: integral of f^2 + f'^2 = 2 pi
  EXPECT_NEAR(surface_norm(BoundarySeries::cosine(1, 1.0, 1), 1.0), std::sqrt(2 * pi), 1e-13);
  EXPECT_EQ(surface_norm(BoundarySeries(4), 1.0), 0.0);
}

TEST(SurfaceNorm, Parseval) {
  auto f = random_series(7, 0.3, 21) + BoundarySeries::constant(0.4);
  auto v = f.sample(64);
  double q = 0;
  for (double x : v) q += x * x * 2 * pi / 64;
  EXPECT_NEAR(surface_norm(f, 0) * surface_norm(f, 0), q, 1e-10 * q);
}

TEST(DomainChart, AreaIsExact) {
  auto s = build_surface(random_series(6, 0.05, 2), 0.3);
  auto c = make_chart(s, 128, 128);
  auto e = s.eta.sample(4096);
  double area = 0;
  for (double x : e) area += 0.5 * (1 + x) * (1 + x) * 2 * pi / 4096;
  EXPECT_NEAR(c->area(), area, 1e-8 * area);
  auto disk = make_chart(build_surface(BoundarySeries::constant(0.0), 0.3), 16, 16);
  EXPECT_NEAR(disk->area(), pi, 1e-13);
  EXPECT_NEAR(disk->boundary_length(), 2 * pi, 1e-13);
}
