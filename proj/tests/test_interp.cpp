#include <gtest/gtest.h>

#include <cmath>

#include "fbmhd/calculus.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/interp.hpp"
#include "fbmhd/parallel.hpp"

using namespace fbmhd;

namespace {
ChartPtr chart(const BoundarySeries& eta, int nr, int nt) { return make_chart(build_surface(eta, 0.4), nr, nt); }
ChartPtr bumpy(int nr, int nt) {
  return chart(BoundarySeries::cosine(2, 0.1, 3) + BoundarySeries::sine(3, 0.03, 3), nr, nt);
}
}  // namespace

TEST(Interp, ChartCoordinatesOfNodes) {
  auto c = bumpy(16, 32);
  for (int k = 0; k < c->size(); k += 7) {
    auto p = chart_coordinates(*c, c->x(k), c->y(k));
    EXPECT_NEAR(p.rho, c->rho(k / 32), 1e-13);
    EXPECT_NEAR(std::remainder(p.theta - c->theta(k % 32), 2 * M_PI), 0.0, 1e-13);
  }
}

TEST(Interp, IdentityTransferOfBandLimitedData) {
  auto c = bumpy(20, 40);
  auto u = sample_scalar(c, [](double x, double y) { return std::sin(x) * std::exp(y); });
  auto t = transfer(u, c);
  EXPECT_LT(max_abs(t - u), 1e-12);
}

TEST(Interp, ReproducesConstantsAndCubics) {
  auto src = bumpy(20, 40);
  auto dst = chart(BoundarySeries::constant(-0.1), 24, 48);
  auto one = transfer(ScalarField(src, 3.5), dst);
  EXPECT_LT(max_abs(one - ScalarField(dst, 3.5)), 1e-13);
  auto f = [](double x, double y) { return x - 2 * y + x * y * y - 0.5 * x * x * x; };
  // only polynomials of degree < n_theta/2 in x, y are band limited on rings
  auto u = transfer(sample_scalar(src, f), dst);
  EXPECT_LT(max_abs(u - sample_scalar(dst, f)), 1e-11);
}

TEST(Interp, ExtrapolatesOneCellWithCubicAccuracy) {
  auto src = bumpy(20, 40);
  auto c = chart(BoundarySeries::cosine(2, 0.1, 3) + BoundarySeries::sine(3, 0.03, 3) + BoundarySeries::constant(0.03),
                 20, 40);
  auto f = [](double x, double y) { return x * x * y + 1; };
  auto u = transfer(sample_scalar(src, f), c);
  EXPECT_LT(max_abs(u - sample_scalar(c, f)), 1e-11);
}

TEST(Interp, RejectsFarPoints) {
  auto src = bumpy(20, 40);
  auto dst = chart(BoundarySeries::constant(0.2), 20, 40);
  EXPECT_THROW(transfer(ScalarField(src, 1.0), dst), Error);
  try {
    transfer(ScalarField(src, 1.0), dst);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ExtrapolationTooFar);
  }
  // a larger reach allows it
  EXPECT_NO_THROW(transfer(ScalarField(src, 1.0), dst, 10.0));
}

TEST(Interp, SmoothFieldConverges) {
  auto f = [](double x, double y) { return std::cos(3 * x + y) * std::exp(-y); };
  double prev = 0;
  for (int n : {16, 32, 64}) {
    auto src = bumpy(n, 2 * n);
    auto dst = chart((BoundarySeries::cosine(2, 0.1, 3) + BoundarySeries::sine(3, 0.03, 3)) * 0.9 - BoundarySeries::constant(0.02), 17, 38);
    double e = max_abs(transfer(sample_scalar(src, f), dst) - sample_scalar(dst, f));
    if (prev > 0) EXPECT_GT(prev / e, 8.0) << n;
    prev = e;
  }
}

TEST(Interp, ThreadedMatchesSequential) {
  auto src = bumpy(20, 40);
  auto dst = chart(BoundarySeries::constant(-0.15), 30, 64);
  auto u = sample_vector(src, [](double x, double y) { return std::pair{std::sin(x * y), x + y}; });
  auto a = transfer(u, dst);
  set_thread_count(3);
  auto b = transfer(u, dst);
  set_thread_count(0);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
}
