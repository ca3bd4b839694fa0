#pragma once

#include <vector>

#include "fbmhd/chart.hpp"

namespace fbmhd {

struct ScalarField {
  ChartPtr chart;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(ChartPtr c, double value = 0.0);
  ScalarField(ChartPtr c, std::vector<double> values);

  int size() const { return int(v.size()); }
  double& operator[](int k) { return v[k]; }
  double operator[](int k) const { return v[k]; }
};

// Cartesian components on the chart nodes.
struct VectorField {
  ChartPtr chart;
  std::vector<double> x, y;
  // L2 norm of the discrete divergence, recorded by the projections; -1 if unset.
  double div_residual = -1.0;

  VectorField() = default;
  explicit VectorField(ChartPtr c);
  VectorField(ChartPtr c, std::vector<double> xs, std::vector<double> ys);

  int size() const { return int(x.size()); }
};

// Function on the boundary ring, sampled at the chart's theta nodes.
struct BoundaryFn {
  std::vector<double> v;

  BoundaryFn() = default;
  explicit BoundaryFn(int n, double value = 0.0) : v(n, value) {}
  explicit BoundaryFn(std::vector<double> values) : v(std::move(values)) {}

  int size() const { return int(v.size()); }
  double& operator[](int j) { return v[j]; }
  double operator[](int j) const { return v[j]; }
  BoundarySeries series() const;
};

void check_finite(const std::vector<double>& v, const char* what);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);
BoundaryFn operator+(const BoundaryFn& a, const BoundaryFn& b);
BoundaryFn operator-(const BoundaryFn& a, const BoundaryFn& b);
BoundaryFn operator*(double s, const BoundaryFn& a);
BoundaryFn operator*(const BoundaryFn& a, const BoundaryFn& b);

// Sample a closed-form function at the chart nodes.
template <class F>
ScalarField sample_scalar(const ChartPtr& c, F f) {
  ScalarField u(c);
  for (int k = 0; k < c->size(); ++k) u.v[k] = f(c->x(k), c->y(k));
  return u;
}

template <class F>
VectorField sample_vector(const ChartPtr& c, F f) {
  VectorField u(c);
  for (int k = 0; k < c->size(); ++k) {
    auto [a, b] = f(c->x(k), c->y(k));
    u.x[k] = a;
    u.y[k] = b;
  }
  return u;
}

template <class F>
BoundaryFn sample_boundary(const DomainChart& c, F f) {
  BoundaryFn g(c.n_theta());
  for (int j = 0; j < c.n_theta(); ++j) g.v[j] = f(c.theta(j));
  return g;
}

BoundaryFn trace(const ScalarField& u);
ScalarField component(const VectorField& u, int which);
ScalarField dot(const VectorField& a, const VectorField& b);
// v . n on the boundary ring
BoundaryFn normal_component(const VectorField& u);

}  // namespace fbmhd
