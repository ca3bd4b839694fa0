#pragma once

#include <complex>
#include <vector>

namespace fbmhd {

// Real periodic function on the reference circle, stored as Fourier
// coefficients for modes -M..M (index k + M).
class BoundarySeries {
 public:
  using cplx = std::complex<double>;

  BoundarySeries() = default;
  explicit BoundarySeries(int M);
  BoundarySeries(int M, std::vector<cplx> coeffs);

  static BoundarySeries constant(double c, int M = 0);
  static BoundarySeries cosine(int k, double amp, int M);
  static BoundarySeries sine(int k, double amp, int M);
  // Truncated interpolant of samples on a uniform grid of size n.
  static BoundarySeries from_samples(const std::vector<double>& values, int M);

  int M() const { return M_; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const;
  void set_coeff(int k, cplx value);  // also sets -k to the conjugate

  double operator()(double theta, int deriv = 0) const;
  // Values (or derivatives) on the uniform grid theta_j = 2 pi j / n.
  std::vector<double> sample(int n, int deriv = 0) const;

  double hermitian_defect() const;

  BoundarySeries operator+(const BoundarySeries& o) const;
  BoundarySeries operator-(const BoundarySeries& o) const;
  BoundarySeries operator*(double s) const;

 private:
  int M_ = 0;
  std::vector<cplx> c_{cplx(0.0)};
};

double surface_norm(const BoundarySeries& f, double s);

struct SurfaceGraph {
  BoundarySeries eta;
  double collar_delta = 0.3;
  double max_abs_eta = 0;
  double max_abs_deta = 0;

  double collar_margin() const;
  // Uniform grid resolution used for collar/containment checks.
  int check_resolution() const;
};

SurfaceGraph build_surface(const BoundarySeries& eta, double collar_delta);

struct NormalCurvature {
  std::vector<double> nx, ny, kappa;
};

NormalCurvature normal_and_curvature(const SurfaceGraph& s, int n_theta);

// Heat flow e^{delta^2 d_theta^2} followed by the inward shift C delta^2.
SurfaceGraph heat_regularize(const SurfaceGraph& s, double delta, double margin = 0.1);

struct IntersectionMask {
  std::vector<double> eta_min;  // grid samples of min(eta, eta_h)
  std::vector<char> mask_A, mask_Ah, mask_common;
  double tol_eq = 0;
};

IntersectionMask intersect(const SurfaceGraph& a, const SurfaceGraph& b, int n_theta);

}  // namespace fbmhd
