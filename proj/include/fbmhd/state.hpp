#pragma once

#include <memory>

#include "fbmhd/elliptic.hpp"
#include "fbmhd/field.hpp"

namespace fbmhd {

struct StateConfig {
  double tol_elliptic = 1e-10;
  double tol_div = 1e-8;
  double tol_tangency = 1e-8;
  double c0_min = 1e-3;
  // Off only for tests and oracles that need to look at Taylor-violating states.
  bool check_taylor = true;
  bool reproject = true;
};

// Assembled state. Everything past v and B is derived at assembly.
struct MhdState {
  ChartPtr chart;
  std::shared_ptr<const EllipticWorkspace> ws;
  StateConfig cfg;

  VectorField v, B;
  ScalarField P;
  BoundaryFn a;
  VectorField Wp, Wm;
  ScalarField omega_p, omega_m;
  BoundaryFn G_p, G_m, grad_B_a;

  const SurfaceGraph& surface() const { return chart->surface(); }
};

struct StateDiagnostics {
  double total_energy = 0;
  double a_min = 0;
  double tangency_residual = 0;
  double div_residual_v = 0;
  double div_residual_B = 0;
  double collar_margin = 0;
};

// Re-projects v and B (unless cfg.reproject is off), then solves for the
// pressure and the derived quantities.
MhdState assemble(const ChartPtr& chart, const VectorField& v, const VectorField& B, const StateConfig& cfg = {});

struct MaterialPressure {
  ScalarField plus, minus;
};
MaterialPressure material_pressure(const MhdState& s);

struct GoodVariables {
  BoundaryFn G_plus, G_minus, grad_B_a;
};
GoodVariables good_variables(const MhdState& s);

StateDiagnostics diagnostics(const MhdState& s);

// grad_B along the boundary for B tangent to it: (B . tau) d/ds.
BoundaryFn boundary_directional(const VectorField& B, const BoundaryFn& g);

// Pressure source -d_i W+_j d_j W-_i (= tr(grad B)^2 - tr(grad v)^2).
ScalarField pressure_source(const VectorField& Wp, const VectorField& Wm);

// a kappa + (Delta P - n_i n_j d_ij P) on the boundary; kappa is positive for
// convex curves.
BoundaryFn curvature_pressure_residual(const MhdState& s);

}  // namespace fbmhd
