#pragma once

#include <complex>
#include <vector>

#include "fbmhd/field.hpp"

namespace fbmhd {

struct ChartCoords {
  double rho, theta;
};

// rho > 1 means outside the domain. The boundary radius between nodes is the
// trigonometric interpolant of the sampled R.
ChartCoords chart_coordinates(const DomainChart& c, double x, double y);
double boundary_radius(const DomainChart& c, double theta);

// Trigonometric interpolation in theta times cubic Lagrange in rho (windows
// shifted inward near the ends, so cubics along rays are reproduced, including
// the extrapolated band just outside the boundary).
class ChartInterpolator {
 public:
  // `reach` is the allowed distance past the boundary ring, in radial cells.
  ChartInterpolator(ChartPtr c, std::vector<const std::vector<double>*> fields, double reach = 1.0);
  explicit ChartInterpolator(const ScalarField& u, double reach = 1.0);
  explicit ChartInterpolator(const VectorField& u, double reach = 1.0);

  int count() const { return nf_; }
  const DomainChart& chart() const { return *c_; }

  // Writes one value per field; throws ExtrapolationTooFar past the reach.
  void eval(double x, double y, double* out) const;
  void eval_chart(double rho, double theta, double* out) const;
  double operator()(double x, double y) const;

 private:
  ChartPtr c_;
  int nf_;
  int modes_;
  double reach_;
  std::vector<std::complex<double>> coef_;  // [field][ring][mode]
  std::vector<std::complex<double>> rcoef_;
};

ScalarField transfer(const ScalarField& u, const ChartPtr& dst, double reach = 1.0);
VectorField transfer(const VectorField& u, const ChartPtr& dst, double reach = 1.0);

}  // namespace fbmhd
