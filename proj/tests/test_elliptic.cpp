#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fbmhd/calculus.hpp"
#include "fbmhd/elliptic.hpp"
#include "fbmhd/error.hpp"

using namespace fbmhd;
constexpr double pi = std::numbers::pi;

namespace {
ChartPtr disk(int nr, int nt) { return make_chart(build_surface(BoundarySeries::constant(0.0), 0.3), nr, nt); }
ChartPtr bumpy(int nr, int nt) {
  auto eta = BoundarySeries::cosine(2, 0.1, 3) + BoundarySeries::sine(3, 0.03, 3);
  return make_chart(build_surface(eta, 0.5), nr, nt);
}
BoundaryFn random_boundary(const DomainChart& c, int modes, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  std::vector<double> a(modes + 1), b(modes + 1);
  for (int k = 0; k <= modes; ++k) {
    a[k] = d(gen) / (1 + k);
    b[k] = d(gen) / (1 + k);
  }
  return sample_boundary(c, [&](double t) {
    double s = 0;
    for (int k = 0; k <= modes; ++k) s += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
    return s;
  });
}
double bdot(const BoundaryFn& a, const BoundaryFn& b, const DomainChart& c) { return integrate_boundary(a * b, c); }
}  // namespace

TEST(EllipticOperator, SymmetricAndConstantKernel) {
  auto c = bumpy(12, 24);
  EllipticWorkspace ws(c);
  std::mt19937 gen(1);
  std::normal_distribution<double> d;
  std::vector<double> u(c->size()), v(c->size());
  for (auto& x : u) x = d(gen);
  for (auto& x : v) x = d(gen);
  const double a = ws.bilinear(u, v), b = ws.bilinear(v, u);
  EXPECT_NEAR(a, b, 1e-12 * std::abs(a));
  EXPECT_GT(ws.bilinear(u, u), 0.0);
  std::vector<double> one(c->size(), 1.0), y;
  ws.apply(one, y);
  for (double x : y) EXPECT_NEAR(x, 0.0, 1e-12);
}

TEST(PoissonDirichlet, Paraboloid) {
  auto c = disk(32, 32);
  EllipticWorkspace ws(c);
  auto u = ws.poisson_dirichlet(ScalarField(c, -4.0), BoundaryFn(32));
  for (int k = 0; k < c->size(); ++k) {
    const double r2 = c->x(k) * c->x(k) + c->y(k) * c->y(k);
    EXPECT_NEAR(u.v[k], 1 - r2, 1e-9);
  }
}

TEST(PoissonDirichlet, ConstantData) {
  auto c = bumpy(16, 32);
  EllipticWorkspace ws(c);
  auto u = ws.harmonic_extension(BoundaryFn(32, 2.5));
  for (double x : u.v) EXPECT_NEAR(x, 2.5, 1e-9);
}

TEST(PoissonDirichlet, ManufacturedOrder) {
  std::vector<double> errs;
  for (int n : {32, 64, 128}) {
    auto c = make_chart(build_surface(BoundarySeries::cosine(2, 0.1, 2), 0.3), n, n);
    EllipticWorkspace ws(c);
    // u = r^3 cos 3theta + r^2 = x^3 - 3 x y^2 + x^2 + y^2, Delta u = 4
    auto exact = [](double x, double y) { return x * x * x - 3 * x * y * y + x * x + y * y; };
    auto g = sample_boundary(*c, [&](double) { return 0.0; });
    for (int j = 0; j < n; ++j) {
      const int k = c->idx(c->boundary_ring(), j);
      g.v[j] = exact(c->x(k), c->y(k));
    }
    auto u = ws.poisson_dirichlet(ScalarField(c, 4.0), g);
    double e = 0;
    for (int k = 0; k < c->size(); ++k) e = std::max(e, std::abs(u.v[k] - exact(c->x(k), c->y(k))));
    errs.push_back(e);
  }
  EXPECT_GE(std::log2(errs[0] / errs[1]), 1.8);
  EXPECT_GE(std::log2(errs[1] / errs[2]), 1.8);
}

TEST(HarmonicExtension, DiskModesAndMaximumPrinciple) {
  auto c = disk(48, 48);
  EllipticWorkspace ws(c);
  auto u = ws.harmonic_extension(sample_boundary(*c, [](double t) { return std::cos(3 * t); }));
  for (int k = 0; k < c->size(); ++k) {
    const double r = std::hypot(c->x(k), c->y(k)), t = std::atan2(c->y(k), c->x(k));
    EXPECT_NEAR(u.v[k], r * r * r * std::cos(3 * t), 2e-3);
  }
  auto b = bumpy(24, 48);
  EllipticWorkspace wb(b);
  auto g = random_boundary(*b, 6, 7);
  auto v = wb.harmonic_extension(g);
  double gmin = 1e300, gmax = -1e300;
  for (double x : g.v) gmin = std::min(gmin, x), gmax = std::max(gmax, x);
  for (double x : v.v) {
    EXPECT_GE(x, gmin - 1e-9);
    EXPECT_LE(x, gmax + 1e-9);
  }
}

TEST(NormalTrace, DiskExamples) {
  auto c = disk(32, 32);
  EllipticWorkspace ws(c);
  auto u = sample_scalar(c, [](double x, double y) { return 1 - x * x - y * y; });
  for (double x : ws.normal_trace_grad(u).v) EXPECT_NEAR(x, -2.0, 1e-11);
  for (double x : ws.normal_trace_grad(ScalarField(c, 3.0)).v) EXPECT_NEAR(x, 0.0, 1e-12);
  auto w = sample_scalar(c, [](double x, double) { return x; });
  auto g = ws.normal_trace_grad(w);
  for (int j = 0; j < 32; ++j) EXPECT_NEAR(g.v[j], std::cos(c->theta(j)), 1e-12);
}

TEST(Dtn, DiskSpectrum) {
  auto c = disk(64, 64);
  EllipticWorkspace ws(c);
  for (double x : ws.dtn(BoundaryFn(64, 1.0)).v) EXPECT_NEAR(x, 0.0, 1e-9);
  for (int k = 1; k <= 4; ++k) {
    auto g = sample_boundary(*c, [k](double t) { return std::cos(k * t); });
    auto n = ws.dtn(g);
    for (int j = 0; j < 64; ++j) EXPECT_NEAR(n.v[j], k * g.v[j], 4e-3 * k);
  }
}

TEST(Dtn, ScaledCircle) {
  auto c = make_chart(build_surface(BoundarySeries::constant(0.2), 0.3), 48, 48);
  EllipticWorkspace ws(c);
  auto g = sample_boundary(*c, [](double t) { return std::cos(t); });
  auto n = ws.dtn(g);
  for (int j = 0; j < 48; ++j) EXPECT_NEAR(n.v[j], g.v[j] / 1.2, 1e-9);
}

TEST(Dtn, InverseAndPowers) {
  auto c = disk(48, 48);
  EllipticWorkspace ws(c);
  auto f = sample_boundary(*c, [](double t) { return std::cos(2 * t); });
  auto g = ws.dtn_inverse(f);
  for (int j = 0; j < 48; ++j) EXPECT_NEAR(g.v[j], 0.5 * f.v[j], 2e-3);
  try {
    ws.dtn_inverse(BoundaryFn(48, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonZeroMean);
  }
  auto p = ws.dtn_power(f, 2);
  for (int j = 0; j < 48; ++j) EXPECT_NEAR(p.v[j], 4 * f.v[j], 1e-2);
  auto id = ws.dtn_power(f, 0);
  EXPECT_EQ(id.v, f.v);
  for (double x : ws.dtn_power(BoundaryFn(48, 2.0), 3).v) EXPECT_NEAR(x, 0.0, 1e-8);
}

TEST(Dtn, InverseRoundTripOnPerturbedDomain) {
  auto c = bumpy(24, 48);
  EllipticWorkspace ws(c);
  auto f = surface_mean_free(random_boundary(*c, 8, 3), *c);
  auto back = ws.dtn(ws.dtn_inverse(f));
  const double scale = max_abs(f);
  for (int j = 0; j < 48; ++j) EXPECT_NEAR(back.v[j], f.v[j], 10 * ws.tol() * 10 * scale);
}

TEST(Dtn, SelfAdjointAndPositive) {
  auto c = bumpy(24, 48);
  EllipticWorkspace ws(c);
  for (unsigned s = 0; s < 3; ++s) {
    auto f = random_boundary(*c, 8, 10 + s), g = random_boundary(*c, 8, 20 + s);
    const double a = bdot(ws.dtn(f), g, *c), b = bdot(f, ws.dtn(g), *c);
    EXPECT_NEAR(a, b, 1e-9 * (std::abs(a) + 1));
    EXPECT_GT(bdot(ws.dtn(f), f, *c), 0.0);
  }
}

TEST(Dtn, GreenIdentityConverges) {
  double prev = 0;
  for (int n : {16, 32, 64}) {
    auto c = bumpy(n, 2 * n);
    EllipticWorkspace ws(c);
    auto g = sample_boundary(*c, [](double t) { return std::cos(2 * t) + 0.5 * std::sin(3 * t); });
    auto u = ws.harmonic_extension(g);
    auto du = grad(u);
    const double err = std::abs(inner(du, du) - bdot(ws.dtn(g), g, *c));
    if (prev > 0) EXPECT_GT(prev / err, 2.5);
    prev = err;
  }
}

TEST(PoissonNeumann, DiskMode) {
  auto c = disk(48, 48);
  EllipticWorkspace ws(c);
  // u = r^2 cos 2 theta harmonic, d_n u = 2 cos 2 theta
  auto psi = sample_boundary(*c, [](double t) { return 2 * std::cos(2 * t); });
  auto u = ws.poisson_neumann(ScalarField(c, 0.0), psi);
  for (int k = 0; k < c->size(); ++k) EXPECT_NEAR(u.v[k], c->x(k) * c->x(k) - c->y(k) * c->y(k), 2e-3);
}

TEST(Dtn, LeibnizDefectConverges) {
  // H(fg) = Hf Hg - 2 Delta^{-1}(grad Hf . grad Hg) with zero Dirichlet data
  auto f_fn = [](double t) { return std::cos(t) + 0.5 * std::sin(2 * t); };
  auto g_fn = [](double t) { return 0.3 - 0.4 * std::cos(3 * t) + 0.2 * std::sin(t); };
  double prev = 0;
  for (int n : {16, 32, 64}) {
    auto c = make_chart(build_surface(BoundarySeries::cosine(2, 0.1, 4), 0.3), n, 2 * n);
    EllipticWorkspace ws(c, 1e-12, 5000);
    auto f = sample_boundary(*c, f_fn), g = sample_boundary(*c, g_fn);
    auto h = dot(grad(ws.harmonic_extension(f)), grad(ws.harmonic_extension(g)));
    auto defect = ws.dtn(f * g) - f * ws.dtn(g) - g * ws.dtn(f) + 2.0 * ws.normal_of_inverse_laplacian(h);
    const double e = boundary_l2_norm(defect, *c);
    if (prev > 0) EXPECT_GT(prev / e, 3.0) << n;
    prev = e;
  }
  EXPECT_LT(prev, 1e-3);
}
