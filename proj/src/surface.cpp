#include "fbmhd/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fbmhd/error.hpp"
#include "fbmhd/fourier.hpp"

namespace fbmhd {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

BoundarySeries::BoundarySeries(int M) : M_(M), c_(2 * M + 1, cplx(0.0)) {
  if (M < 0) throw Error(ErrorKind::InvalidArgument, "negative mode cutoff");
}

BoundarySeries::BoundarySeries(int M, std::vector<cplx> coeffs) : M_(M), c_(std::move(coeffs)) {
  if (M < 0 || c_.size() != size_t(2 * M + 1))
    throw Error(ErrorKind::InvalidArgument, "coefficient count does not match 2M+1");
}

BoundarySeries BoundarySeries::constant(double c, int M) {
  BoundarySeries b(M);
  b.c_[M] = c;
  return b;
}

BoundarySeries BoundarySeries::cosine(int k, double amp, int M) {
  BoundarySeries b(std::max(M, k));
  if (k == 0) b.set_coeff(0, amp);
  else b.set_coeff(k, 0.5 * amp);
  return b;
}

BoundarySeries BoundarySeries::sine(int k, double amp, int M) {
  BoundarySeries b(std::max(M, k));
  if (k != 0) b.set_coeff(k, cplx(0.0, -0.5 * amp));
  return b;
}

BoundarySeries BoundarySeries::from_samples(const std::vector<double>& values, int M) {
  const int n = int(values.size());
  if (n < 2 || n % 2) throw Error(ErrorKind::InvalidArgument, "sample count must be even");
  M = std::min(M, n / 2 - 1);
  auto c = fourier::coefficients(values.data(), n);
  BoundarySeries b(M);
  b.c_[M] = c[0].real();
  for (int k = 1; k <= M; ++k) b.set_coeff(k, c[k]);
  return b;
}

cplx BoundarySeries::coeff(int k) const {
  if (std::abs(k) > M_) return 0.0;
  return c_[k + M_];
}

void BoundarySeries::set_coeff(int k, cplx value) {
  if (std::abs(k) > M_) throw Error(ErrorKind::InvalidArgument, "mode beyond cutoff");
  if (k == 0) {
    c_[M_] = value.real();
    return;
  }
  c_[k + M_] = value;
  c_[-k + M_] = std::conj(value);
}

double BoundarySeries::operator()(double theta, int deriv) const {
  double s = c_[M_].real() * (deriv == 0 ? 1.0 : 0.0);
  for (int k = 1; k <= M_; ++k) {
    cplx f = std::pow(cplx(0.0, k), deriv);
    s += 2.0 * (f * c_[k + M_] * std::polar(1.0, k * theta)).real();
  }
  return s;
}

std::vector<double> BoundarySeries::sample(int n, int deriv) const {
  std::vector<double> out(n);
  if (2 * M_ < n && n % 2 == 0) {
    std::vector<cplx> spec(n / 2 + 1, cplx(0.0));
    if (deriv == 0) spec[0] = c_[M_].real();
    for (int k = 1; k <= M_; ++k) spec[k] = std::pow(cplx(0.0, k), deriv) * c_[k + M_];
    fourier::backward(spec.data(), out.data(), n);
    return out;
  }
  for (int j = 0; j < n; ++j) out[j] = (*this)(kTwoPi * j / n, deriv);
  return out;
}

double BoundarySeries::hermitian_defect() const {
  double d = std::abs(c_[M_].imag());
  for (int k = 1; k <= M_; ++k) d = std::max(d, std::abs(c_[k + M_] - std::conj(c_[-k + M_])));
  return d;
}

BoundarySeries BoundarySeries::operator+(const BoundarySeries& o) const {
  BoundarySeries r(std::max(M_, o.M_));
  for (int k = -r.M_; k <= r.M_; ++k) r.c_[k + r.M_] = coeff(k) + o.coeff(k);
  return r;
}

BoundarySeries BoundarySeries::operator-(const BoundarySeries& o) const { return *this + o * -1.0; }

BoundarySeries BoundarySeries::operator*(double s) const {
  BoundarySeries r = *this;
  for (auto& z : r.c_) z *= s;
  return r;
}

double surface_norm(const BoundarySeries& f, double s) {
  double acc = 0;
  for (int k = -f.M(); k <= f.M(); ++k)
    acc += std::pow(1.0 + double(k) * k, s) * std::norm(f.coeff(k));
  return std::sqrt(kTwoPi * acc);
}

double SurfaceGraph::collar_margin() const {
  return collar_delta - std::max(max_abs_eta, max_abs_deta);
}

int SurfaceGraph::check_resolution() const { return std::max(256, 16 * (eta.M() + 1)); }

SurfaceGraph build_surface(const BoundarySeries& eta, double collar_delta) {
  if (!(collar_delta > 0)) throw Error(ErrorKind::InvalidArgument, "collar_delta must be positive");
  if (eta.hermitian_defect() > 1e-12 * (1.0 + surface_norm(eta, 0)))
    throw Error(ErrorKind::InvalidArgument, "eta is not real-valued");
  SurfaceGraph g;
  g.eta = eta;
  g.collar_delta = collar_delta;
  const int n = g.check_resolution();
  auto e = eta.sample(n);
  auto de = eta.sample(n, 1);
  double emin = 1e300;
  for (int j = 0; j < n; ++j) {
    g.max_abs_eta = std::max(g.max_abs_eta, std::abs(e[j]));
    g.max_abs_deta = std::max(g.max_abs_deta, std::abs(de[j]));
    emin = std::min(emin, e[j]);
  }
  if (1.0 + emin <= 0) throw Error(ErrorKind::NotStarShaped, "1 + eta vanishes");
  if (g.max_abs_eta >= collar_delta || g.max_abs_deta >= collar_delta)
    throw Error(ErrorKind::CollarViolation,
                "max|eta| = " + std::to_string(g.max_abs_eta) + ", max|eta'| = " +
                    std::to_string(g.max_abs_deta) + ", collar " + std::to_string(collar_delta));
  return g;
}

NormalCurvature normal_and_curvature(const SurfaceGraph& s, int n_theta) {
  auto e = s.eta.sample(n_theta);
  auto d1 = s.eta.sample(n_theta, 1);
  auto d2 = s.eta.sample(n_theta, 2);
  NormalCurvature out;
  out.nx.resize(n_theta);
  out.ny.resize(n_theta);
  out.kappa.resize(n_theta);
  for (int j = 0; j < n_theta; ++j) {
    const double th = kTwoPi * j / n_theta;
    const double r = 1.0 + e[j], r1 = d1[j], r2 = d2[j];
    const double len = std::hypot(r, r1);
    const double c = std::cos(th), sn = std::sin(th);
    // n proportional to r e_r - r' e_theta
    out.nx[j] = (r * c + r1 * sn) / len;
    out.ny[j] = (r * sn - r1 * c) / len;
    out.kappa[j] = (r * r + 2 * r1 * r1 - r * r2) / (len * len * len);
  }
  return out;
}

SurfaceGraph heat_regularize(const SurfaceGraph& s, double delta, double margin) {
  if (delta < 0) throw Error(ErrorKind::InvalidArgument, "negative heat-flow scale");
  if (delta == 0) return s;
  const double d2 = delta * delta;
  BoundarySeries smooth = s.eta;
  for (int k = 1; k <= smooth.M(); ++k) smooth.set_coeff(k, smooth.coeff(k) * std::exp(-d2 * k * k));
  const int n = s.check_resolution();
  auto before = s.eta.sample(n);
  auto after = smooth.sample(n);
  double over = 0;
  for (int j = 0; j < n; ++j) over = std::max(over, after[j] - before[j]);
  const double C = (1.0 + margin) * over / d2;
  smooth.set_coeff(0, smooth.coeff(0) - C * d2);
  SurfaceGraph out = build_surface(smooth, s.collar_delta);
  auto shifted = smooth.sample(n);
  for (int j = 0; j < n; ++j)
    if (shifted[j] > before[j] + 1e-14)
      throw Error(ErrorKind::CollarViolation, "regularized boundary not contained in the original");
  return out;
}

IntersectionMask intersect(const SurfaceGraph& a, const SurfaceGraph& b, int n_theta) {
  auto ea = a.eta.sample(n_theta);
  auto eb = b.eta.sample(n_theta);
  IntersectionMask m;
  double ma = 0, mb = 0;
  for (int j = 0; j < n_theta; ++j) {
    ma = std::max(ma, std::abs(ea[j]));
    mb = std::max(mb, std::abs(eb[j]));
  }
  m.tol_eq = 1e-12 * (1.0 + ma + mb);
  m.eta_min.resize(n_theta);
  m.mask_A.assign(n_theta, 0);
  m.mask_Ah.assign(n_theta, 0);
  m.mask_common.assign(n_theta, 0);
  for (int j = 0; j < n_theta; ++j) {
    m.eta_min[j] = std::min(ea[j], eb[j]);
    const double d = ea[j] - eb[j];
    if (std::abs(d) <= m.tol_eq) m.mask_common[j] = 1;
    else if (d < 0) m.mask_A[j] = 1;
    else m.mask_Ah[j] = 1;
  }
  return m;
}

}  // namespace fbmhd
