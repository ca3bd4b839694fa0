#include "fbmhd/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fbmhd/calculus.hpp"
#include "fbmhd/elliptic.hpp"
#include "fbmhd/error.hpp"

namespace fbmhd::oracle {

namespace {
constexpr double pi = std::numbers::pi;
}

StateRecipe equilibrium_rotor(double c, double collar_delta) {
  StateRecipe r;
  r.description = "magnetic rotor c=" + std::to_string(c);
  r.surface = build_surface(BoundarySeries::constant(0.0), collar_delta);
  r.v = [](double, double) { return std::pair{0.0, 0.0}; };
  r.B = [c](double x, double y) { return std::pair{-c * y, c * x}; };
  r.P = [c](double x, double y) { return c * c * (1 - x * x - y * y) / 2; };
  r.a = c * c;
  r.energy = pi * c * c / 4;
  return r;
}

StateRecipe taylor_violating_rotation(double c, double collar_delta) {
  StateRecipe r;
  r.description = "rigid fluid rotation c=" + std::to_string(c);
  r.surface = build_surface(BoundarySeries::constant(0.0), collar_delta);
  r.v = [c](double x, double y) { return std::pair{-c * y, c * x}; };
  r.B = [](double, double) { return std::pair{0.0, 0.0}; };
  // Delta P = -tr(grad v)^2 = 2 c^2
  r.P = [c](double x, double y) { return c * c * (x * x + y * y - 1) / 2; };
  r.a = -c * c;
  r.energy = pi * c * c / 4;
  return r;
}

StateRecipe perturbed_rotor(double c, double amp, int mode, double collar_delta) {
  StateRecipe r = equilibrium_rotor(c, collar_delta);
  r.description = "perturbed rotor c=" + std::to_string(c) + " amp=" + std::to_string(amp) +
                  " mode=" + std::to_string(mode);
  // grad(Re (x + i y)^m) / m = (Re z^{m-1}, -Im z^{m-1})
  r.v = [amp, mode](double x, double y) {
    std::complex<double> z(x, y), w = std::pow(z, mode - 1);
    return std::pair{amp * w.real(), -amp * w.imag()};
  };
  r.P = nullptr;
  r.a = 0;
  r.energy = 0;
  return r;
}

StateRecipe irrotational_strain(double s, double collar_delta) {
  StateRecipe r;
  r.description = "irrotational strain s=" + std::to_string(s);
  r.surface = build_surface(BoundarySeries::constant(0.0), collar_delta);
  r.v = [s](double x, double y) { return std::pair{s * x, -s * y}; };
  r.B = [](double, double) { return std::pair{0.0, 0.0}; };
  // Delta P = -tr(grad v)^2 = -2 s^2
  r.P = [s](double x, double y) { return s * s * (1 - x * x - y * y) / 2; };
  r.a = s * s;
  r.energy = pi * s * s / 2;
  return r;
}

MhdState build(const StateRecipe& r, int n_r, int n_theta, const StateConfig& cfg) {
  ChartPtr c = make_chart(r.surface, n_r, n_theta);
  return assemble(c, sample_vector(c, r.v), sample_vector(c, r.B), cfg);
}

double rotor_momentum_residual(double c) {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  double worst = 0;
  for (int n = 0; n < 200; ++n) {
    const double x = u(gen), y = u(gen);
    // B = c(-y, x): (B.grad)B = c^2 (-x, -y); grad P = -c^2 (x, y)
    const double bx = -c * y, by = c * x;
    const double BgBx = bx * 0 + by * (-c), BgBy = bx * c + by * 0;
    const double Px = -c * c * x, Py = -c * c * y;
    worst = std::max(worst, std::hypot(-BgBx + Px, -BgBy + Py));
  }
  return worst;
}

RotorEnergy rotor_energy(double c) {
  RotorEnergy e;
  e.W_L2_sq = c * c * pi / 2;      // int r^2 c^2 over the disk
  e.omega_H2_sq = 4 * c * c * pi;  // omega = 2c constant
  e.total = 2 + 2 * (e.W_L2_sq + e.omega_H2_sq);
  return e;
}

ReferenceSolution manufactured_poisson(const std::string& id) {
  ReferenceSolution r;
  r.description = id;
  if (id == "paraboloid") {
    r.u = [](double x, double y) { return 1 - x * x - y * y; };
    r.grad = [](double x, double y) { return std::pair{-2 * x, -2 * y}; };
    r.lap = [](double, double) { return -4.0; };
  } else if (id == "linear_x") {
    r.u = [](double x, double) { return x; };
    r.grad = [](double, double) { return std::pair{1.0, 0.0}; };
    r.lap = [](double, double) { return 0.0; };
  } else if (id == "r3cos3") {
    r.u = [](double x, double y) { return x * x * x - 3 * x * y * y; };
    r.grad = [](double x, double y) { return std::pair{3 * x * x - 3 * y * y, -6 * x * y}; };
    r.lap = [](double, double) { return 0.0; };
  } else if (id == "exp_harmonic") {
    r.u = [](double x, double y) { return std::exp(x) * std::sin(y); };
    r.grad = [](double x, double y) { return std::pair{std::exp(x) * std::sin(y), std::exp(x) * std::cos(y)}; };
    r.lap = [](double, double) { return 0.0; };
  } else if (id == "trig_poly") {
    r.u = [](double x, double y) { return std::sin(2 * x) * std::cos(y) + x * x * y; };
    r.grad = [](double x, double y) {
      return std::pair{2 * std::cos(2 * x) * std::cos(y) + 2 * x * y, -std::sin(2 * x) * std::sin(y) + x * x};
    };
    r.lap = [](double x, double y) { return -5 * std::sin(2 * x) * std::cos(y) + 2 * y; };
  } else {
    throw Error(ErrorKind::UnknownExpr, "no manufactured solution named '" + id + "'");
  }
  return r;
}

ScalarField fine_reference_solve(const PoissonProblem& p, int factor) {
  if (factor < 1) throw Error(ErrorKind::InvalidArgument, "refinement factor must be >= 1");
  // keep the boundary on the last ring: h_f = h / factor
  const int nr = factor == 1 ? p.n_r : int(std::lround(factor * (p.n_r - 0.5) + 0.5));
  ChartPtr c = make_chart(p.surface, nr, p.n_theta * factor);
  EllipticWorkspace ws(c, factor == 1 ? p.tol : p.tol / 100, 20000);
  return ws.poisson_dirichlet(sample_scalar(c, p.f), sample_boundary(*c, [&](double t) {
                                const double R = 1 + p.surface.eta(t);
                                return p.g(R * std::cos(t), R * std::sin(t));
                              }));
}

BoundaryFn fine_reference_dtn(const SurfaceGraph& s, int n_r, int n_theta, const Scalar2& g, int factor,
                              double tol) {
  const int nr = factor == 1 ? n_r : int(std::lround(factor * (n_r - 0.5) + 0.5));
  ChartPtr c = make_chart(s, nr, n_theta * factor);
  EllipticWorkspace ws(c, factor == 1 ? tol : tol / 100, 20000);
  return ws.dtn(sample_boundary(*c, [&](double t) {
    const double R = 1 + s.eta(t);
    return g(R * std::cos(t), R * std::sin(t));
  }));
}

}  // namespace fbmhd::oracle
