#pragma once

#include <complex>
#include <vector>

namespace fbmhd::fourier {

using cplx = std::complex<double>;

// Unnormalized real transforms of length n (n even). Plans are cached per length
// and shared across threads; execution uses the new-array interface.
void forward(const double* in, cplx* out, int n);
void backward(const cplx* in, double* out, int n);

// Spectral theta-derivative of one periodic ring. Odd orders drop the Nyquist
// mode so the first-derivative matrix is exactly skew.
void derivative(const double* in, double* out, int n, int order = 1);
void derivative_rings(const double* in, double* out, int rings, int n, int order = 1);

// Normalized coefficients c_k, k = 0..n/2, with u_j = sum_k c_k e^{ik theta_j}
// over the symmetric range.
std::vector<cplx> coefficients(const double* in, int n);

// Trigonometric interpolant (and its derivative) from normalized coefficients.
double evaluate(const cplx* c, int n, double theta);
double evaluate_derivative(const cplx* c, int n, double theta);

// Multiply mode |k| by mult(k) in place, k = 0..n/2.
template <class F>
void apply_multiplier(double* u, int n, F mult) {
  std::vector<cplx> c(n / 2 + 1);
  forward(u, c.data(), n);
  for (int k = 0; k <= n / 2; ++k) c[k] *= mult(k) / double(n);
  backward(c.data(), u, n);
}

}  // namespace fbmhd::fourier
