#include "fbmhd/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fbmhd::fourier {

namespace {

struct Plans {
  fftw_plan r2c;
  fftw_plan c2r;
};

const Plans& plans_for(int n) {
  static std::mutex mtx;
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> r(n);
  std::vector<cplx> c(n / 2 + 1);
  auto* cp = reinterpret_cast<fftw_complex*>(c.data());
  Plans p;
  p.r2c = fftw_plan_dft_r2c_1d(n, r.data(), cp, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.c2r = fftw_plan_dft_c2r_1d(n, cp, r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(const double* in, cplx* out, int n) {
  const Plans& p = plans_for(n);
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void backward(const cplx* in, double* out, int n) {
  const Plans& p = plans_for(n);
  // c2r destroys its input
  std::vector<cplx> tmp(in, in + n / 2 + 1);
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(tmp.data()), out);
}

void derivative(const double* in, double* out, int n, int order) {
  std::vector<cplx> c(n / 2 + 1);
  forward(in, c.data(), n);
  const double inv = 1.0 / n;
  for (int k = 0; k <= n / 2; ++k) {
    cplx f = std::pow(cplx(0.0, double(k)), order);
    if (k == n / 2 && order % 2 == 1) f = 0.0;
    c[k] *= f * inv;
  }
  backward(c.data(), out, n);
}

void derivative_rings(const double* in, double* out, int rings, int n, int order) {
  for (int i = 0; i < rings; ++i) derivative(in + i * n, out + i * n, n, order);
}

std::vector<cplx> coefficients(const double* in, int n) {
  std::vector<cplx> c(n / 2 + 1);
  forward(in, c.data(), n);
  for (auto& z : c) z /= double(n);
  return c;
}

double evaluate(const cplx* c, int n, double theta) {
  double s = c[0].real();
  const int half = n / 2;
  const cplx w(std::cos(theta), std::sin(theta));
  cplx e = w;
  for (int k = 1; k < half; ++k) {
    s += 2.0 * (c[k] * e).real();
    e *= w;
  }
  s += c[half].real() * std::cos(half * theta);
  return s;
}

double evaluate_derivative(const cplx* c, int n, double theta) {
  double s = 0.0;
  const int half = n / 2;
  const cplx w(std::cos(theta), std::sin(theta));
  cplx e = w;
  for (int k = 1; k < half; ++k) {
    s += 2.0 * (cplx(0.0, k) * c[k] * e).real();
    e *= w;
  }
  s -= c[half].real() * half * std::sin(half * theta);
  return s;
}

}  // namespace fbmhd::fourier
