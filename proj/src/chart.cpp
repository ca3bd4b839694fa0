#include "fbmhd/chart.hpp"

#include <cmath>
#include <numbers>

#include "fbmhd/error.hpp"
#include "fbmhd/fourier.hpp"

namespace fbmhd {

DomainChart::DomainChart(const SurfaceGraph& surface, int n_r, int n_theta) {
  if (n_r < 6 || n_theta < 8 || n_theta % 2)
    throw Error(ErrorKind::InvalidArgument, "grid needs n_r >= 6 and even n_theta >= 8");
  n_r_ = n_r;
  n_t_ = n_theta;
  surface_ = surface;
  build(surface.eta.sample(n_theta), surface.eta.sample(n_theta, 1), surface.eta.sample(n_theta, 2));
}

ChartPtr DomainChart::from_samples(const std::vector<double>& eta, double collar_delta, int n_r) {
  const int n = int(eta.size());
  if (n_r < 6 || n < 8 || n % 2)
    throw Error(ErrorKind::InvalidArgument, "grid needs n_r >= 6 and even n_theta >= 8");
  std::shared_ptr<DomainChart> c(new DomainChart());
  c->n_r_ = n_r;
  c->n_t_ = n;
  c->surface_.eta = BoundarySeries::from_samples(eta, n / 2 - 1);
  c->surface_.collar_delta = collar_delta;
  std::vector<double> d1(n), d2(n);
  fourier::derivative(eta.data(), d1.data(), n, 1);
  fourier::derivative(eta.data(), d2.data(), n, 2);
  c->build(eta, d1, d2);
  return c;
}

void DomainChart::build(const std::vector<double>& eta, const std::vector<double>& d1,
                        const std::vector<double>& d2) {
  const int nr = n_r_, nt = n_t_;
  h_ = 1.0 / (nr - 0.5);
  dth_ = 2.0 * std::numbers::pi / nt;
  eta_ = eta;
  rho_.resize(nr);
  cell_.resize(nr);
  beta_.resize(nr);
  for (int i = 0; i < nr; ++i) {
    rho_[i] = (i + 0.5) * h_;
    cell_[i] = rho_[i] * h_;
    beta_[i] = h_;
  }
  rho_[nr - 1] = 1.0;
  cell_[nr - 1] = 0.5 * h_ * (1.0 - 0.25 * h_);
  beta_[nr - 1] = 0.5 * h_;

  theta_.resize(nt);
  cos_.resize(nt);
  sin_.resize(nt);
  R_.resize(nt);
  Rp_.resize(nt);
  Rpp_.resize(nt);
  arc_.resize(nt);
  nx_.resize(nt);
  ny_.resize(nt);
  kappa_.resize(nt);
  for (int j = 0; j < nt; ++j) {
    theta_[j] = dth_ * j;
    cos_[j] = std::cos(theta_[j]);
    sin_[j] = std::sin(theta_[j]);
    R_[j] = 1.0 + eta[j];
    Rp_[j] = d1[j];
    Rpp_[j] = d2[j];
    if (R_[j] <= 0) throw Error(ErrorKind::NotStarShaped, "1 + eta vanishes on the grid");
    arc_[j] = std::hypot(R_[j], Rp_[j]);
    nx_[j] = (R_[j] * cos_[j] + Rp_[j] * sin_[j]) / arc_[j];
    ny_[j] = (R_[j] * sin_[j] - Rp_[j] * cos_[j]) / arc_[j];
    const double s3 = arc_[j] * arc_[j] * arc_[j];
    kappa_[j] = (R_[j] * R_[j] + 2 * Rp_[j] * Rp_[j] - R_[j] * Rpp_[j]) / s3;
  }

  const int n = nr * nt;
  w_.resize(n);
  x_.resize(n);
  y_.resize(n);
  rx_.resize(n);
  ry_.resize(n);
  tx_.resize(n);
  ty_.resize(n);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      const int k = idx(i, j);
      const double r = rho_[i] * R_[j];
      const double qj = Rp_[j] / R_[j];
      w_[k] = cell_[i] * R_[j] * R_[j] * dth_;
      x_[k] = r * cos_[j];
      y_[k] = r * sin_[j];
      // grad rho = (e_r - q e_theta)/R, grad theta = e_theta/(rho R)
      rx_[k] = (cos_[j] + qj * sin_[j]) / R_[j];
      ry_[k] = (sin_[j] - qj * cos_[j]) / R_[j];
      tx_[k] = -sin_[j] / r;
      ty_[k] = cos_[j] / r;
    }
}

double DomainChart::area() const {
  double a = 0;
  for (double w : w_) a += w;
  return a;
}

double DomainChart::boundary_length() const {
  double L = 0;
  for (double s : arc_) L += s * dth_;
  return L;
}

ChartPtr make_chart(const SurfaceGraph& surface, int n_r, int n_theta) {
  return std::make_shared<const DomainChart>(surface, n_r, n_theta);
}

}  // namespace fbmhd
