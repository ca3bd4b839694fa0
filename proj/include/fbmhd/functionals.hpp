#pragma once

#include <array>

#include "fbmhd/state.hpp"

namespace fbmhd {

// Index 0 is the + sign, 1 the - sign. The "1 +" of each sign is not stored in
// one_plus_L2; it only enters total.
struct EnergyReport {
  std::array<double, 2> one_plus_L2{};
  std::array<double, 2> omega_H2{};
  std::array<double, 2> gradB_omega_H32_proxy{};
  std::array<double, 2> a_N2a_L2Gamma{};
  std::array<double, 2> gradH_N_G_L2{};
  std::array<double, 2> gradH_N_gradBa_L2{};
  std::array<double, 2> inv_a_N_gradBG_L2Gamma{};
  double total = 0;

  double sum_components() const;
};

struct DistanceReport {
  double interior_plus = 0, interior_minus = 0, boundary_A = 0, boundary_Ah = 0, total = 0;
};

struct ControlReport {
  double A_proxy = 0, A_half_proxy = 0;
  // pieces
  double field_sup = 0, field_holder = 0, field_grad_sup = 0;
  double dtp_w1inf = 0;
  double gamma_c1eps = 0, gamma_c1half = 0;
};

enum class GreenRoute { Boundary, Interior };

double linearized_energy(const MhdState& s, const VectorField& w_plus, const VectorField& w_minus,
                         const BoundaryFn& sfn);

EnergyReport higher_energy(const MhdState& s, int k = 3, GreenRoute route = GreenRoute::Boundary);

// || grad H f ||^2 over the domain, either as <N f, f> on the boundary or by
// quadrature of the harmonic extension.
double harmonic_dirichlet_energy(const EllipticWorkspace& ws, const BoundaryFn& f, GreenRoute route);

DistanceReport distance(const MhdState& x, const MhdState& y);

// Hoelder exponent 1/2 + holder_eps for the field part of A.
ControlReport control_parameters(const MhdState& s, double holder_eps = 0.1);

}  // namespace fbmhd
