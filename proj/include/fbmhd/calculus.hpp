#pragma once

#include <vector>

#include "fbmhd/field.hpp"

namespace fbmhd {

// Finite-difference weights for the m-th derivative at x0 from nodes xs.
std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m);

// Radial derivative stencils on the uniform node set of a chart: five-point
// windows, centered in the interior and one-sided at both ends.
class RadialStencil {
 public:
  RadialStencil(int n_r, double h, int order);
  static const RadialStencil& get(int n_r, double h, int order);

  // out = D in (applied along rho for every theta column)
  void apply(const double* in, double* out, int n_theta) const;
  // out = D^T in
  void apply_transpose(const double* in, double* out, int n_theta) const;

  int start(int i) const { return start_[i]; }
  const std::vector<double>& weights(int i) const { return w_[i]; }
  int n_r() const { return n_r_; }

 private:
  int n_r_;
  std::vector<int> start_;
  std::vector<std::vector<double>> w_;
};

ScalarField d_rho(const ScalarField& u, int order = 1);
ScalarField d_theta(const ScalarField& u, int order = 1);

VectorField grad(const ScalarField& u);
// (-d_y u, d_x u)
VectorField perp_grad(const ScalarField& u);
// Conservative forms: div(perp_grad) and curl(grad) vanish to roundoff.
ScalarField div(const VectorField& v);
ScalarField curl(const VectorField& v);

struct Hessian {
  ScalarField xx, xy, yy;
};
Hessian hessian(const ScalarField& u);
ScalarField laplacian_fd(const ScalarField& u);

ScalarField directional(const VectorField& B, const ScalarField& u);
VectorField directional(const VectorField& B, const VectorField& u);

enum class DiffKind { Grad, Div, Curl2d, Hessian };
// Generic entry point: returns the requested derivative as a list of scalar
// components (grad: x,y; div/curl: one; hessian: xx,xy,yy).
std::vector<ScalarField> differential(const ScalarField& u, DiffKind kind);
std::vector<ScalarField> differential(const VectorField& u, DiffKind kind);

double integrate(const ScalarField& u);
double integrate_boundary(const BoundaryFn& g, const DomainChart& c);
double integrate_boundary_masked(const BoundaryFn& g, const DomainChart& c, const std::vector<char>& mask);

double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);
double l2_norm(const ScalarField& u);
double l2_norm(const VectorField& u);
double boundary_l2_norm(const BoundaryFn& g, const DomainChart& c);
double max_abs(const ScalarField& u);
double max_abs(const BoundaryFn& g);

double sobolev_norm(const ScalarField& u, int m);
double sobolev_norm(const VectorField& u, int m);
// Geometric-mean surrogate for the H^{m+1/2} norm.
double fractional_proxy(const ScalarField& u, int m);
double fractional_proxy(const VectorField& u, int m);

// Tangential derivative along the boundary, d/ds = (1/|x_theta|) d/dtheta.
BoundaryFn tangential_derivative(const BoundaryFn& g, const DomainChart& c);
BoundaryFn surface_mean_free(const BoundaryFn& g, const DomainChart& c);

}  // namespace fbmhd
