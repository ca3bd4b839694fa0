#pragma once

#include <functional>
#include <string>
#include <utility>

#include "fbmhd/state.hpp"
#include "fbmhd/surface.hpp"

namespace fbmhd::oracle {

using Scalar2 = std::function<double(double, double)>;
using Vector2 = std::function<std::pair<double, double>(double, double)>;

// Closed-form u with its gradient and Laplacian.
struct ReferenceSolution {
  std::string description;
  Scalar2 u, lap;
  Vector2 grad;
};

// Closed-form state ingredients. P and a are only set for equilibria.
struct StateRecipe {
  std::string description;
  SurfaceGraph surface;
  Vector2 v, B;
  Scalar2 P;
  double a = 0;
  double energy = 0;
};

// eta = 0, v = 0, B = c(-y, x): P = c^2 (1 - r^2)/2, a = c^2, E = pi c^2 / 4.
StateRecipe equilibrium_rotor(double c, double collar_delta = 0.3);
// eta = 0, v = c(-y, x), B = 0: a = -c^2.
StateRecipe taylor_violating_rotation(double c, double collar_delta = 0.3);
// Rotor with v = amp grad(r^m cos(m theta)) / m added (irrotational, divergence free).
StateRecipe perturbed_rotor(double c, double amp, int mode, double collar_delta = 0.3);
// B = 0, v = s (x, -y): irrotational strain.
StateRecipe irrotational_strain(double s, double collar_delta = 0.3);

// Sample the recipe on a fresh chart and assemble.
MhdState build(const StateRecipe& r, int n_r, int n_theta, const StateConfig& cfg = {});

// max |-B.grad B + grad P| for the rotor closed forms at scattered points.
double rotor_momentum_residual(double c);

struct RotorEnergy {
  double W_L2_sq, omega_H2_sq, total;
};
// Closed-form E^3 components of the rotor (per sign, plus the total).
RotorEnergy rotor_energy(double c);

// Catalog: "paraboloid", "linear_x", "r3cos3", "exp_harmonic", "trig_poly".
// Throws UnknownExpr for anything else.
ReferenceSolution manufactured_poisson(const std::string& id);

// Same discretization at factor times the resolution with tol / 100.
struct PoissonProblem {
  SurfaceGraph surface;
  int n_r = 32, n_theta = 64;
  Scalar2 f, g;
  double tol = 1e-10;
};
ScalarField fine_reference_solve(const PoissonProblem& p, int factor);
// DtN of the trace of g, on the factor-refined boundary grid.
BoundaryFn fine_reference_dtn(const SurfaceGraph& s, int n_r, int n_theta, const Scalar2& g, int factor,
                              double tol = 1e-10);

}  // namespace fbmhd::oracle
