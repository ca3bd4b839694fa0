#include "fbmhd/state.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "fbmhd/calculus.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/projection.hpp"

namespace fbmhd {

namespace {

// g[i][j] = d_i u_j
using Jac = std::array<std::array<ScalarField, 2>, 2>;

Jac jacobian_of(const VectorField& u) {
  Jac g;
  for (int j = 0; j < 2; ++j) {
    VectorField d = grad(component(u, j));
    g[0][j] = ScalarField(u.chart, d.x);
    g[1][j] = ScalarField(u.chart, d.y);
  }
  return g;
}

// tr(A B) at node k
double tr2(const Jac& A, const Jac& B, int k) {
  double s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += A[i][j][k] * B[j][i][k];
  return s;
}

double tr3(const Jac& A, const Jac& B, const Jac& C, int k) {
  double s = 0;
  for (int i = 0; i < 2; ++i)
    for (int l = 0; l < 2; ++l)
      for (int j = 0; j < 2; ++j) s += A[i][l][k] * B[l][j][k] * C[j][i][k];
  return s;
}

// Delta W . grad P + 2 grad W : grad^2 P
ScalarField m2_divergence(const VectorField& W, const Jac& gW, const VectorField& gP, const Hessian& HP) {
  const auto& c = *W.chart;
  ScalarField lx = laplacian_fd(component(W, 0)), ly = laplacian_fd(component(W, 1));
  ScalarField out(W.chart);
  for (int k = 0; k < c.size(); ++k) {
    const double H[2][2] = {{HP.xx[k], HP.xy[k]}, {HP.xy[k], HP.yy[k]}};
    double s = lx[k] * gP.x[k] + ly[k] * gP.y[k];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += 2.0 * gW[i][j][k] * H[i][j];
    out.v[k] = s;
  }
  return out;
}

// (n . grad) W . grad P on the boundary ring
BoundaryFn normal_transport(const Jac& gW, const VectorField& gP) {
  const auto& c = *gP.chart;
  BoundaryFn out(c.n_theta());
  for (int j = 0; j < c.n_theta(); ++j) {
    const int k = c.idx(c.boundary_ring(), j);
    double s = 0;
    for (int m = 0; m < 2; ++m) s += (c.nx(j) * gW[0][m][k] + c.ny(j) * gW[1][m][k]) * (m == 0 ? gP.x[k] : gP.y[k]);
    out.v[j] = s;
  }
  return out;
}

}  // namespace

ScalarField pressure_source(const VectorField& Wp, const VectorField& Wm) {
  Jac gp = jacobian_of(Wp), gm = jacobian_of(Wm);
  ScalarField f(Wp.chart);
  for (int k = 0; k < f.size(); ++k) f.v[k] = -tr2(gp, gm, k);
  return f;
}

BoundaryFn boundary_directional(const VectorField& B, const BoundaryFn& g) {
  const auto& c = *B.chart;
  BoundaryFn d = tangential_derivative(g, c);
  for (int j = 0; j < c.n_theta(); ++j) {
    const int k = c.idx(c.boundary_ring(), j);
    d.v[j] *= -B.x[k] * c.ny(j) + B.y[k] * c.nx(j);
  }
  return d;
}

GoodVariables good_variables(const MhdState& s) {
  VectorField gP = grad(s.P);
  Hessian HP = hessian(s.P);
  GoodVariables g;
  for (int sign : {+1, -1}) {
    const VectorField& W = sign > 0 ? s.Wp : s.Wm;
    Jac gW = jacobian_of(W);
    BoundaryFn G = normal_transport(gW, gP) - s.ws->normal_of_inverse_laplacian(m2_divergence(W, gW, gP, HP));
    (sign > 0 ? g.G_plus : g.G_minus) = G;
  }
  g.grad_B_a = boundary_directional(s.B, s.a);
  return g;
}

MaterialPressure material_pressure(const MhdState& s) {
  const auto& c = *s.chart;
  VectorField gP = grad(s.P);
  Hessian HP = hessian(s.P);
  Jac gp = jacobian_of(s.Wp), gm = jacobian_of(s.Wm);
  const VectorField mgP = -1.0 * gP;
  const Jac g_mgP = jacobian_of(mgP);
  MaterialPressure out;
  for (int sign : {+1, -1}) {
    // D_t^+ W^+ = -grad P + 2 grad_B W^+, D_t^+ W^- = -grad P (and mirrored)
    const VectorField& Wsame = sign > 0 ? s.Wp : s.Wm;
    const VectorField Dsame = mgP + (2.0 * sign) * directional(s.B, Wsame);
    const Jac gDsame = jacobian_of(Dsame);
    const Jac& gX = sign > 0 ? gDsame : g_mgP;  // grad of D_t W^+
    const Jac& gY = sign > 0 ? g_mgP : gDsame;  // grad of D_t W^-
    const Jac& gs = sign > 0 ? gp : gm;
    ScalarField F = m2_divergence(Wsame, gs, gP, HP);
    for (int k = 0; k < c.size(); ++k)
      F.v[k] += tr3(gs, gp, gm, k) + tr3(gs, gm, gp, k) - tr2(gX, gm, k) - tr2(gp, gY, k);
    ScalarField DP = s.ws->poisson_dirichlet(F, BoundaryFn(c.n_theta()));
    (sign > 0 ? out.plus : out.minus) = DP;
  }
  return out;
}

MhdState assemble(const ChartPtr& chart, const VectorField& v, const VectorField& B, const StateConfig& cfg) {
  check_finite(v.x, "v");
  check_finite(v.y, "v");
  check_finite(B.x, "B");
  check_finite(B.y, "B");
  if (v.chart.get() != chart.get() || B.chart.get() != chart.get())
    throw Error(ErrorKind::InvalidArgument, "fields must live on the assembly chart");
  MhdState s;
  s.chart = chart;
  s.cfg = cfg;
  s.ws = std::make_shared<const EllipticWorkspace>(chart, cfg.tol_elliptic);
  ProjectionOptions po;
  po.tol = cfg.tol_elliptic;
  if (cfg.reproject) {
    s.v = div_free_projection(v, po);
    s.B = rot_projection(div_free_projection(B, po), po);
  } else {
    s.v = v;
    s.B = B;
  }
  const double dv = divergence_residual(s.v), dB = divergence_residual(s.B);
  if (dv > 10 * cfg.tol_div || dB > 10 * cfg.tol_div)
    throw Error(ErrorKind::DivergenceViolation,
                "divergence residuals " + std::to_string(dv) + ", " + std::to_string(dB), "assemble");
  const double tr = tangency_residual(s.B);
  if (tr > 10 * cfg.tol_tangency * (1 + l2_norm(s.B)))
    throw Error(ErrorKind::TangencyViolation, "tangency residual " + std::to_string(tr), "assemble");
  s.v.div_residual = dv;
  s.B.div_residual = dB;

  s.Wp = s.v + s.B;
  s.Wm = s.v - s.B;
  s.omega_p = curl(s.Wp);
  s.omega_m = curl(s.Wm);
  ScalarField f = pressure_source(s.Wp, s.Wm);
  s.P = s.ws->poisson_dirichlet(f, BoundaryFn(chart->n_theta()));
  s.a = -1.0 * s.ws->normal_flux(s.P, &f);
  if (cfg.check_taylor) {
    const double amin = *std::min_element(s.a.v.begin(), s.a.v.end());
    if (!(amin >= cfg.c0_min))
      throw Error(ErrorKind::TaylorSignViolation,
                  "min a = " + std::to_string(amin) + " below c0 = " + std::to_string(cfg.c0_min), "assemble");
  }
  GoodVariables g = good_variables(s);
  s.G_p = std::move(g.G_plus);
  s.G_m = std::move(g.G_minus);
  s.grad_B_a = std::move(g.grad_B_a);
  return s;
}

StateDiagnostics diagnostics(const MhdState& s) {
  StateDiagnostics d;
  d.total_energy = 0.5 * (inner(s.v, s.v) + inner(s.B, s.B));
  d.a_min = *std::min_element(s.a.v.begin(), s.a.v.end());
  d.tangency_residual = tangency_residual(s.B);
  d.div_residual_v = divergence_residual(s.v);
  d.div_residual_B = divergence_residual(s.B);
  d.collar_margin = s.surface().collar_margin();
  return d;
}

BoundaryFn curvature_pressure_residual(const MhdState& s) {
  const auto& c = *s.chart;
  Hessian H = hessian(s.P);
  ScalarField lap = laplacian_fd(s.P);
  BoundaryFn r(c.n_theta());
  for (int j = 0; j < c.n_theta(); ++j) {
    const int k = c.idx(c.boundary_ring(), j);
    const double nx = c.nx(j), ny = c.ny(j);
    const double nn = nx * nx * H.xx[k] + 2 * nx * ny * H.xy[k] + ny * ny * H.yy[k];
    // kappa > 0 on convex curves, so Delta P - d_nn P = kappa d_n P = -a kappa
    r.v[j] = s.a[j] * c.kappa(j) + (lap[k] - nn);
  }
  return r;
}

}  // namespace fbmhd
