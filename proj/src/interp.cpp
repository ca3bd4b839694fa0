#include "fbmhd/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fbmhd/error.hpp"
#include "fbmhd/fourier.hpp"
#include "fbmhd/parallel.hpp"

namespace fbmhd {

namespace {

using cplx = std::complex<double>;
constexpr double two_pi = 2.0 * std::numbers::pi;

double trig_sum(const cplx* c, const cplx* e, int half) {
  double s = c[0].real();
  for (int k = 1; k < half; ++k) s += 2.0 * (c[k].real() * e[k].real() - c[k].imag() * e[k].imag());
  return s + c[half].real() * e[half].real();
}

void powers(double theta, int half, std::vector<cplx>& e) {
  e.resize(half + 1);
  const cplx w(std::cos(theta), std::sin(theta));
  e[0] = 1.0;
  for (int k = 1; k <= half; ++k) e[k] = e[k - 1] * w;
  // the Nyquist term is the cosine only; recompute to avoid drift in the recurrence
  e[half] = cplx(std::cos(half * theta), 0.0);
}

}  // namespace

double boundary_radius(const DomainChart& c, double theta) {
  auto co = fourier::coefficients(&c.eta_samples()[0], c.n_theta());
  return 1.0 + fourier::evaluate(co.data(), c.n_theta(), theta);
}

ChartCoords chart_coordinates(const DomainChart& c, double x, double y) {
  double t = std::atan2(y, x);
  if (t < 0) t += two_pi;
  const double r = std::hypot(x, y);
  return {r / boundary_radius(c, t), t};
}

ChartInterpolator::ChartInterpolator(ChartPtr c, std::vector<const std::vector<double>*> fields, double reach)
    : c_(std::move(c)), nf_(int(fields.size())), modes_(c_->n_theta() / 2 + 1), reach_(reach) {
  const int nr = c_->n_r(), nt = c_->n_theta();
  coef_.resize(size_t(nf_) * nr * modes_);
  for (int f = 0; f < nf_; ++f)
    for (int i = 0; i < nr; ++i) {
      auto co = fourier::coefficients(fields[f]->data() + size_t(i) * nt, nt);
      std::copy(co.begin(), co.end(), coef_.begin() + (size_t(f) * nr + i) * modes_);
    }
  rcoef_ = fourier::coefficients(c_->eta_samples().data(), nt);
}

ChartInterpolator::ChartInterpolator(const ScalarField& u, double reach) : ChartInterpolator(u.chart, {&u.v}, reach) {}

ChartInterpolator::ChartInterpolator(const VectorField& u, double reach)
    : ChartInterpolator(u.chart, {&u.x, &u.y}, reach) {}

void ChartInterpolator::eval_chart(double rho, double theta, double* out) const {
  const auto& c = *c_;
  const int nr = c.n_r(), half = c.n_theta() / 2;
  if (rho > 1.0 + reach_ * c.h() + 1e-12)
    throw Error(ErrorKind::ExtrapolationTooFar,
                "point at rho = " + std::to_string(rho) + " lies beyond the allowed band outside the domain");
  const double h = c.h();
  int s = int(std::floor((rho - c.rho(0)) / h)) - 1;
  s = std::clamp(s, 0, nr - 4);
  double w[4];
  for (int a = 0; a < 4; ++a) {
    double l = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) l *= (rho - c.rho(s + b)) / (c.rho(s + a) - c.rho(s + b));
    w[a] = l;
  }
  thread_local std::vector<cplx> e;
  powers(theta, half, e);
  for (int f = 0; f < nf_; ++f) {
    double v = 0;
    for (int a = 0; a < 4; ++a) v += w[a] * trig_sum(&coef_[(size_t(f) * nr + s + a) * modes_], e.data(), half);
    out[f] = v;
  }
}

void ChartInterpolator::eval(double x, double y, double* out) const {
  double t = std::atan2(y, x);
  if (t < 0) t += two_pi;
  thread_local std::vector<cplx> e;
  const int half = c_->n_theta() / 2;
  powers(t, half, e);
  const double R = 1.0 + trig_sum(rcoef_.data(), e.data(), half);
  eval_chart(std::hypot(x, y) / R, t, out);
}

double ChartInterpolator::operator()(double x, double y) const {
  double v[8];
  if (nf_ > 8) throw Error(ErrorKind::InvalidArgument, "operator() supports at most 8 fields");
  eval(x, y, v);
  return v[0];
}

ScalarField transfer(const ScalarField& u, const ChartPtr& dst, double reach) {
  ChartInterpolator I(u, reach);
  ScalarField out(dst);
  parallel_for(dst->size(), [&](int b, int e) {
    for (int k = b; k < e; ++k) I.eval(dst->x(k), dst->y(k), &out.v[k]);
  });
  return out;
}

VectorField transfer(const VectorField& u, const ChartPtr& dst, double reach) {
  ChartInterpolator I(u, reach);
  VectorField out(dst);
  parallel_for(dst->size(), [&](int b, int e) {
    double v[2];
    for (int k = b; k < e; ++k) {
      I.eval(dst->x(k), dst->y(k), v);
      out.x[k] = v[0];
      out.y[k] = v[1];
    }
  });
  return out;
}

}  // namespace fbmhd
