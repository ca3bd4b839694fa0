#include "fbmhd/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "fbmhd/error.hpp"
#include "fbmhd/fourier.hpp"

namespace fbmhd {

std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m) {
  // Fornberg's recursion
  const int n = int(xs.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

RadialStencil::RadialStencil(int n_r, double h, int order) : n_r_(n_r), start_(n_r), w_(n_r) {
  if (order < 1 || order > 2) throw Error(ErrorKind::InvalidArgument, "radial stencil order must be 1 or 2");
  // five-point windows, centered where possible and clamped at both ends
  const int len = 5;
  const double scale = std::pow(h, -order);
  for (int i = 0; i < n_r; ++i) {
    const int s = std::clamp(i - 2, 0, n_r - len);
    std::vector<double> xs(len);
    for (int l = 0; l < len; ++l) xs[l] = s + l;
    auto w = fd_weights(double(i), xs, order);
    for (double& x : w) x *= scale;
    start_[i] = s;
    w_[i] = std::move(w);
  }
}

const RadialStencil& RadialStencil::get(int n_r, double h, int order) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::unique_ptr<RadialStencil>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{n_r, order}];
  if (!slot) slot = std::make_unique<RadialStencil>(n_r, h, order);
  return *slot;
}

void RadialStencil::apply(const double* in, double* out, int nt) const {
  for (int i = 0; i < n_r_; ++i) {
    double* o = out + i * nt;
    for (int j = 0; j < nt; ++j) o[j] = 0.0;
    const auto& w = w_[i];
    for (size_t l = 0; l < w.size(); ++l) {
      const double* src = in + (start_[i] + int(l)) * nt;
      const double wl = w[l];
      for (int j = 0; j < nt; ++j) o[j] += wl * src[j];
    }
  }
}

void RadialStencil::apply_transpose(const double* in, double* out, int nt) const {
  for (int k = 0; k < n_r_ * nt; ++k) out[k] = 0.0;
  for (int i = 0; i < n_r_; ++i) {
    const double* src = in + i * nt;
    const auto& w = w_[i];
    for (size_t l = 0; l < w.size(); ++l) {
      double* o = out + (start_[i] + int(l)) * nt;
      const double wl = w[l];
      for (int j = 0; j < nt; ++j) o[j] += wl * src[j];
    }
  }
}

namespace {

const RadialStencil& stencil(const DomainChart& c, int order) { return RadialStencil::get(c.n_r(), c.h(), order); }

std::vector<double> drho(const DomainChart& c, const std::vector<double>& u, int order = 1) {
  std::vector<double> out(u.size());
  stencil(c, order).apply(u.data(), out.data(), c.n_theta());
  return out;
}

std::vector<double> dth(const DomainChart& c, const std::vector<double>& u, int order = 1) {
  std::vector<double> out(u.size());
  fourier::derivative_rings(u.data(), out.data(), c.n_r(), c.n_theta(), order);
  return out;
}

}  // namespace

ScalarField d_rho(const ScalarField& u, int order) {
  ScalarField r;
  r.chart = u.chart;
  r.v = drho(*u.chart, u.v, order);
  return r;
}

ScalarField d_theta(const ScalarField& u, int order) {
  ScalarField r;
  r.chart = u.chart;
  r.v = dth(*u.chart, u.v, order);
  return r;
}

VectorField grad(const ScalarField& u) {
  const auto& c = *u.chart;
  auto ur = drho(c, u.v);
  auto ut = dth(c, u.v);
  VectorField g(u.chart);
  for (int k = 0; k < c.size(); ++k) {
    g.x[k] = c.rho_x(k) * ur[k] + c.theta_x(k) * ut[k];
    g.y[k] = c.rho_y(k) * ur[k] + c.theta_y(k) * ut[k];
  }
  return g;
}

VectorField perp_grad(const ScalarField& u) {
  VectorField g = grad(u);
  VectorField r(u.chart);
  for (int k = 0; k < g.size(); ++k) {
    r.x[k] = -g.y[k];
    r.y[k] = g.x[k];
  }
  return r;
}

ScalarField div(const VectorField& v) {
  const auto& c = *v.chart;
  const int nt = c.n_theta();
  std::vector<double> Fr(c.size()), Ft(c.size());
  for (int i = 0; i < c.n_r(); ++i)
    for (int j = 0; j < nt; ++j) {
      const int k = c.idx(i, j);
      const double vr = v.x[k] * c.cos_t(j) + v.y[k] * c.sin_t(j);
      const double vt = -v.x[k] * c.sin_t(j) + v.y[k] * c.cos_t(j);
      Fr[k] = c.rho(i) * c.R(j) * (vr - c.q(j) * vt);
      Ft[k] = c.R(j) * vt;
    }
  auto a = drho(c, Fr);
  auto b = dth(c, Ft);
  ScalarField d(v.chart);
  for (int k = 0; k < c.size(); ++k) d.v[k] = (a[k] + b[k]) / c.jacobian(k);
  return d;
}

ScalarField curl(const VectorField& v) {
  const auto& c = *v.chart;
  const int nt = c.n_theta();
  std::vector<double> cr(c.size()), ct(c.size());
  for (int i = 0; i < c.n_r(); ++i)
    for (int j = 0; j < nt; ++j) {
      const int k = c.idx(i, j);
      const double vr = v.x[k] * c.cos_t(j) + v.y[k] * c.sin_t(j);
      const double vt = -v.x[k] * c.sin_t(j) + v.y[k] * c.cos_t(j);
      // covariant components v . dx/drho and v . dx/dtheta
      cr[k] = c.R(j) * vr;
      ct[k] = c.rho(i) * (c.Rp(j) * vr + c.R(j) * vt);
    }
  auto a = drho(c, ct);
  auto b = dth(c, cr);
  ScalarField w(v.chart);
  for (int k = 0; k < c.size(); ++k) w.v[k] = (a[k] - b[k]) / c.jacobian(k);
  return w;
}

Hessian hessian(const ScalarField& u) {
  const auto& c = *u.chart;
  const int nt = c.n_theta();
  auto ur = drho(c, u.v);
  auto urr = drho(c, u.v, 2);
  auto ut = dth(c, u.v);
  auto utt = dth(c, u.v, 2);
  auto urt = dth(c, ur);
  Hessian H{ScalarField(u.chart), ScalarField(u.chart), ScalarField(u.chart)};
  for (int i = 0; i < c.n_r(); ++i)
    for (int j = 0; j < nt; ++j) {
      const int k = c.idx(i, j);
      const double x = c.x(k), y = c.y(k);
      const double r2 = x * x + y * y, r = std::sqrt(r2), r4 = r2 * r2;
      const double R = c.R(j), Rp = c.Rp(j), Rpp = c.Rpp(j);
      const double t[2] = {c.theta_x(k), c.theta_y(k)};
      const double rr[2] = {x / r, y / r};
      const double rho_[2] = {c.rho_x(k), c.rho_y(k)};
      const double X[2] = {x, y};
      const double tab[2][2] = {{2 * x * y / r4, (y * y - x * x) / r4}, {(y * y - x * x) / r4, -2 * x * y / r4}};
      const double g = Rpp / (R * R) - 2 * Rp * Rp / (R * R * R);
      double out[2][2];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double rab = ((a == b ? 1.0 : 0.0) - X[a] * X[b] / r2) / r;
          const double rho_ab = rab / R - (Rp / (R * R)) * (rr[a] * t[b] + rr[b] * t[a]) - r * g * t[a] * t[b] -
                                (r * Rp / (R * R)) * tab[a][b];
          out[a][b] = urr[k] * rho_[a] * rho_[b] + urt[k] * (rho_[a] * t[b] + rho_[b] * t[a]) +
                      utt[k] * t[a] * t[b] + ur[k] * rho_ab + ut[k] * tab[a][b];
        }
      H.xx.v[k] = out[0][0];
      H.xy.v[k] = 0.5 * (out[0][1] + out[1][0]);
      H.yy.v[k] = out[1][1];
    }
  return H;
}

ScalarField laplacian_fd(const ScalarField& u) {
  Hessian H = hessian(u);
  return H.xx + H.yy;
}

ScalarField directional(const VectorField& B, const ScalarField& u) {
  VectorField g = grad(u);
  ScalarField r(u.chart);
  for (int k = 0; k < r.size(); ++k) r.v[k] = B.x[k] * g.x[k] + B.y[k] * g.y[k];
  return r;
}

VectorField directional(const VectorField& B, const VectorField& u) {
  ScalarField a = directional(B, component(u, 0));
  ScalarField b = directional(B, component(u, 1));
  return VectorField(u.chart, std::move(a.v), std::move(b.v));
}

std::vector<ScalarField> differential(const ScalarField& u, DiffKind kind) {
  switch (kind) {
    case DiffKind::Grad: {
      auto g = grad(u);
      return {component(g, 0), component(g, 1)};
    }
    case DiffKind::Hessian: {
      auto H = hessian(u);
      return {H.xx, H.xy, H.yy};
    }
    default:
      throw Error(ErrorKind::InvalidArgument, "div/curl need a vector field");
  }
}

std::vector<ScalarField> differential(const VectorField& u, DiffKind kind) {
  switch (kind) {
    case DiffKind::Div: return {div(u)};
    case DiffKind::Curl2d: return {curl(u)};
    case DiffKind::Grad: {
      auto a = grad(component(u, 0));
      auto b = grad(component(u, 1));
      return {component(a, 0), component(a, 1), component(b, 0), component(b, 1)};
    }
    default:
      throw Error(ErrorKind::InvalidArgument, "hessian needs a scalar field");
  }
}

double integrate(const ScalarField& u) {
  const auto& c = *u.chart;
  double s = 0;
  for (int k = 0; k < c.size(); ++k) s += c.weight(k) * u.v[k];
  return s;
}

double integrate_boundary(const BoundaryFn& g, const DomainChart& c) {
  double s = 0;
  for (int j = 0; j < c.n_theta(); ++j) s += g.v[j] * c.arc(j);
  return s * c.dtheta();
}

double integrate_boundary_masked(const BoundaryFn& g, const DomainChart& c, const std::vector<char>& mask) {
  double s = 0;
  for (int j = 0; j < c.n_theta(); ++j)
    if (mask[j]) s += g.v[j] * c.arc(j);
  return s * c.dtheta();
}

double inner(const ScalarField& a, const ScalarField& b) {
  const auto& c = *a.chart;
  double s = 0;
  for (int k = 0; k < c.size(); ++k) s += c.weight(k) * a.v[k] * b.v[k];
  return s;
}

double inner(const VectorField& a, const VectorField& b) {
  const auto& c = *a.chart;
  double s = 0;
  for (int k = 0; k < c.size(); ++k) s += c.weight(k) * (a.x[k] * b.x[k] + a.y[k] * b.y[k]);
  return s;
}

double l2_norm(const ScalarField& u) { return std::sqrt(inner(u, u)); }
double l2_norm(const VectorField& u) { return std::sqrt(inner(u, u)); }

double boundary_l2_norm(const BoundaryFn& g, const DomainChart& c) { return std::sqrt(integrate_boundary(g * g, c)); }

double max_abs(const ScalarField& u) {
  double m = 0;
  for (double x : u.v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const BoundaryFn& g) {
  double m = 0;
  for (double x : g.v) m = std::max(m, std::abs(x));
  return m;
}

namespace {

// Sum of squared L2 norms of all k-th Cartesian derivatives, k = 0..m.
double sobolev_sq(const ScalarField& u, int m) {
  if (m < 0 || m > 3) throw Error(ErrorKind::InvalidArgument, "Sobolev order must be 0..3");
  double s = inner(u, u);
  if (m == 0) return s;
  VectorField g = grad(u);
  s += inner(g, g);
  if (m == 1) return s;
  Hessian H = hessian(u);
  s += inner(H.xx, H.xx) + 2 * inner(H.xy, H.xy) + inner(H.yy, H.yy);
  if (m == 2) return s;
  for (const ScalarField* f : {&H.xx, &H.xy, &H.xy, &H.yy}) {
    VectorField d = grad(*f);
    s += inner(d, d);
  }
  return s;
}

}  // namespace

double sobolev_norm(const ScalarField& u, int m) { return std::sqrt(sobolev_sq(u, m)); }

double sobolev_norm(const VectorField& u, int m) {
  return std::sqrt(sobolev_sq(component(u, 0), m) + sobolev_sq(component(u, 1), m));
}

double fractional_proxy(const ScalarField& u, int m) { return std::sqrt(sobolev_norm(u, m) * sobolev_norm(u, m + 1)); }

double fractional_proxy(const VectorField& u, int m) { return std::sqrt(sobolev_norm(u, m) * sobolev_norm(u, m + 1)); }

BoundaryFn tangential_derivative(const BoundaryFn& g, const DomainChart& c) {
  BoundaryFn d(c.n_theta());
  fourier::derivative(g.v.data(), d.v.data(), c.n_theta(), 1);
  for (int j = 0; j < c.n_theta(); ++j) d.v[j] /= c.arc(j);
  return d;
}

BoundaryFn surface_mean_free(const BoundaryFn& g, const DomainChart& c) {
  const double mean = integrate_boundary(g, c) / c.boundary_length();
  BoundaryFn r = g;
  for (double& x : r.v) x -= mean;
  return r;
}

}  // namespace fbmhd
