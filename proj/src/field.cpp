#include "fbmhd/field.hpp"

#include <cmath>
#include <string>

#include "fbmhd/error.hpp"

namespace fbmhd {

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, std::string("non-finite values in ") + what);
}

ScalarField::ScalarField(ChartPtr c, double value) : chart(std::move(c)), v(chart->size(), value) {}

ScalarField::ScalarField(ChartPtr c, std::vector<double> values) : chart(std::move(c)), v(std::move(values)) {
  if (int(v.size()) != chart->size()) throw Error(ErrorKind::InvalidArgument, "scalar field size mismatch");
  check_finite(v, "scalar field");
}

VectorField::VectorField(ChartPtr c) : chart(std::move(c)), x(chart->size(), 0.0), y(chart->size(), 0.0) {}

VectorField::VectorField(ChartPtr c, std::vector<double> xs, std::vector<double> ys)
    : chart(std::move(c)), x(std::move(xs)), y(std::move(ys)) {
  if (int(x.size()) != chart->size() || int(y.size()) != chart->size())
    throw Error(ErrorKind::InvalidArgument, "vector field size mismatch");
  check_finite(x, "vector field");
  check_finite(y, "vector field");
}

BoundarySeries BoundaryFn::series() const { return BoundarySeries::from_samples(v, int(v.size()) / 2 - 1); }

namespace {
template <class Op>
std::vector<double> zip(const std::vector<double>& a, const std::vector<double>& b, Op op) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "field size mismatch");
  std::vector<double> r(a.size());
  for (size_t k = 0; k < a.size(); ++k) r[k] = op(a[k], b[k]);
  return r;
}
std::vector<double> scale(double s, const std::vector<double>& a) {
  std::vector<double> r(a);
  for (double& x : r) x *= s;
  return r;
}
}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  ScalarField r;
  r.chart = a.chart;
  r.v = zip(a.v, b.v, std::plus<>());
  return r;
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  ScalarField r;
  r.chart = a.chart;
  r.v = zip(a.v, b.v, std::minus<>());
  return r;
}
ScalarField operator*(double s, const ScalarField& a) {
  ScalarField r;
  r.chart = a.chart;
  r.v = scale(s, a.v);
  return r;
}
VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r;
  r.chart = a.chart;
  r.x = zip(a.x, b.x, std::plus<>());
  r.y = zip(a.y, b.y, std::plus<>());
  return r;
}
VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r;
  r.chart = a.chart;
  r.x = zip(a.x, b.x, std::minus<>());
  r.y = zip(a.y, b.y, std::minus<>());
  return r;
}
VectorField operator*(double s, const VectorField& a) {
  VectorField r;
  r.chart = a.chart;
  r.x = scale(s, a.x);
  r.y = scale(s, a.y);
  return r;
}
BoundaryFn operator+(const BoundaryFn& a, const BoundaryFn& b) { return BoundaryFn(zip(a.v, b.v, std::plus<>())); }
BoundaryFn operator-(const BoundaryFn& a, const BoundaryFn& b) { return BoundaryFn(zip(a.v, b.v, std::minus<>())); }
BoundaryFn operator*(double s, const BoundaryFn& a) { return BoundaryFn(scale(s, a.v)); }
BoundaryFn operator*(const BoundaryFn& a, const BoundaryFn& b) {
  return BoundaryFn(zip(a.v, b.v, std::multiplies<>()));
}

BoundaryFn trace(const ScalarField& u) {
  const auto& c = *u.chart;
  BoundaryFn g(c.n_theta());
  const int i = c.boundary_ring();
  for (int j = 0; j < c.n_theta(); ++j) g.v[j] = u.v[c.idx(i, j)];
  return g;
}

ScalarField component(const VectorField& u, int which) {
  ScalarField s;
  s.chart = u.chart;
  s.v = which == 0 ? u.x : u.y;
  return s;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  ScalarField s(a.chart);
  for (int k = 0; k < a.size(); ++k) s.v[k] = a.x[k] * b.x[k] + a.y[k] * b.y[k];
  return s;
}

BoundaryFn normal_component(const VectorField& u) {
  const auto& c = *u.chart;
  BoundaryFn g(c.n_theta());
  const int i = c.boundary_ring();
  for (int j = 0; j < c.n_theta(); ++j) {
    const int k = c.idx(i, j);
    g.v[j] = u.x[k] * c.nx(j) + u.y[k] * c.ny(j);
  }
  return g;
}

}  // namespace fbmhd
