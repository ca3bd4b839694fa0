#pragma once

#include <memory>
#include <vector>

#include "fbmhd/surface.hpp"

namespace fbmhd {

// Polar tensor grid on the star-shaped domain {rho R(theta) e_r : 0 <= rho <= 1},
// R = 1 + eta. Radial nodes rho_i = (i + 1/2) h with h = 1/(n_r - 1/2), so the
// first node sits half a cell off the origin and the last one lies on the
// boundary. Node index = i * n_theta + j.
class DomainChart {
 public:
  DomainChart(const SurfaceGraph& surface, int n_r, int n_theta);
  // Geometry from boundary samples only (derivatives by spectral differentiation);
  // used for intersection domains, which are Lipschitz at best.
  static std::shared_ptr<const DomainChart> from_samples(const std::vector<double>& eta,
                                                         double collar_delta, int n_r);

  int n_r() const { return n_r_; }
  int n_theta() const { return n_t_; }
  int size() const { return n_r_ * n_t_; }
  int idx(int i, int j) const { return i * n_t_ + j; }
  int boundary_ring() const { return n_r_ - 1; }

  double h() const { return h_; }
  double dtheta() const { return dth_; }
  double rho(int i) const { return rho_[i]; }
  double theta(int j) const { return theta_[j]; }
  double cos_t(int j) const { return cos_[j]; }
  double sin_t(int j) const { return sin_[j]; }
  double R(int j) const { return R_[j]; }
  double Rp(int j) const { return Rp_[j]; }
  double Rpp(int j) const { return Rpp_[j]; }
  double q(int j) const { return Rp_[j] / R_[j]; }
  double p(int j) const { return 1.0 + q(j) * q(j); }
  double arc(int j) const { return arc_[j]; }           // |dx/dtheta| on the boundary
  double cell_rho_integral(int i) const { return cell_[i]; }
  double beta(int i) const { return beta_[i]; }         // radial extent of the control cell
  double weight(int k) const { return w_[k]; }
  const std::vector<double>& weights() const { return w_; }
  double x(int k) const { return x_[k]; }
  double y(int k) const { return y_[k]; }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }

  // Cartesian gradients of the chart coordinates at node k.
  double rho_x(int k) const { return rx_[k]; }
  double rho_y(int k) const { return ry_[k]; }
  double theta_x(int k) const { return tx_[k]; }
  double theta_y(int k) const { return ty_[k]; }
  double jacobian(int k) const { return rho_[k / n_t_] * R_[k % n_t_] * R_[k % n_t_]; }

  // Outward unit normal and curvature at boundary node j.
  double nx(int j) const { return nx_[j]; }
  double ny(int j) const { return ny_[j]; }
  double kappa(int j) const { return kappa_[j]; }

  const SurfaceGraph& surface() const { return surface_; }
  const std::vector<double>& eta_samples() const { return eta_; }
  double area() const;
  double boundary_length() const;

 private:
  DomainChart() = default;
  void build(const std::vector<double>& eta, const std::vector<double>& d1,
             const std::vector<double>& d2);

  int n_r_ = 0, n_t_ = 0;
  double h_ = 0, dth_ = 0;
  SurfaceGraph surface_;
  std::vector<double> rho_, theta_, cos_, sin_, R_, Rp_, Rpp_, arc_, cell_, beta_, eta_;
  std::vector<double> w_, x_, y_, rx_, ry_, tx_, ty_;
  std::vector<double> nx_, ny_, kappa_;
};

using ChartPtr = std::shared_ptr<const DomainChart>;

ChartPtr make_chart(const SurfaceGraph& surface, int n_r, int n_theta);

}  // namespace fbmhd
