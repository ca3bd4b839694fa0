#pragma once

#include <vector>

#include "fbmhd/field.hpp"
#include "fbmhd/projection.hpp"

namespace fbmhd {

// Tensor-product kernel k(x/s) k(y/s) / s^2 with k(t) = phi(t) (alpha + beta t^2),
// phi the standard bump on (-1, 1). alpha and beta are fitted on the discrete
// nodes so that the discrete mass is 1 and the second moment vanishes; odd
// moments vanish by symmetry, so polynomials of degree <= 3 are reproduced.
struct MollifierKernel {
  double scale = 0;     // support half-width s (physical length)
  double shift_c = 0;   // inward shift: samples taken at (1 - C s) x
  static constexpr int moment_order = 3;

  // 1-D weights at t_p = p d / s, p = -m..m, m = ceil(s/d) - 1.
  std::vector<double> weights(double d) const;
  static double profile(double t);
};

// Below this fraction of a radial cell the kernel is narrower than the sampling
// grid; its effect is O(s^4 |D^4 u|) and mollify returns the input.
inline constexpr double kMinMollifyCells = 1.0;

// Convolution in Cartesian coordinates: the field is sampled on a Cartesian
// grid of half the radial spacing (reflected across the boundary along rays),
// convolved separably, and read back at the chart nodes by bicubic Lagrange
// interpolation. Throws ScaleTooCoarse when s reaches the collar margin or when
// C s exceeds half of it.
ScalarField mollify(const ScalarField& u, double s, double shift_c = 0.0);
VectorField mollify(const VectorField& u, double s, double shift_c = 0.0);

VectorField divfree_mollify(const VectorField& v, double s, const ProjectionOptions& opt = {});
// B minus the gradient of its irrotational part (same curl, tangent output).
VectorField tangency_correct(const VectorField& B, const ProjectionOptions& opt = {});

template <class F>
struct Split {
  F low, high;
};
Split<ScalarField> frequency_split(const ScalarField& u, double s);
Split<VectorField> frequency_split(const VectorField& u, double s);

// I + eps^2 S^4 with S the skew part (in the quadrature inner product) of the
// discrete derivative along X. S^4 = (S^2)^* S^2, so the system is symmetric
// positive definite in that inner product.
class LxSystem {
 public:
  LxSystem(const VectorField& X, double eps);

  const ChartPtr& chart() const { return chart_; }
  double eps() const { return eps_; }
  // T u = X . grad u in chart components and its adjoint.
  void apply_T(const std::vector<double>& u, std::vector<double>& out) const;
  void apply_S(const std::vector<double>& u, std::vector<double>& out) const;
  std::vector<double> S(const std::vector<double>& u) const;
  // out = u + eps^2 S^4 u
  void apply(const std::vector<double>& u, std::vector<double>& out) const;

 private:
  void apply_T_transpose(const std::vector<double>& w, std::vector<double>& out) const;

  ChartPtr chart_;
  double eps_;
  std::vector<double> a_, b_;  // X . grad rho, X . grad theta
};

ScalarField lx_solve(const LxSystem& sys, const ScalarField& u, double tol = 1e-10, int max_iter = 5000);
VectorField lx_solve(const LxSystem& sys, const VectorField& u, double tol = 1e-10, int max_iter = 5000);

struct AlongBConfig {
  double split_scale_cells = 3.0;  // frequency split scale, in radial cells
  int max_fp_iters = 20;
  double tol_fp = 1e-10;
  double tol_elliptic = 1e-10;
};

struct AlongBResult {
  VectorField v, B;
  int iterations = 0;
  double last_change = 0;
};

// B_eps = (B_low + L_{B_eps}^{-1} B_high)^rot, v_eps = (v_low + L_{B_eps}^{-1} v_high)^div,
// with the fixed point in B_eps found by iteration from B.
AlongBResult regularize_along_B(const VectorField& v, const VectorField& B, double eps,
                                const AlongBConfig& cfg = {});

}  // namespace fbmhd
