#include "fbmhd/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fbmhd/calculus.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/interp.hpp"

namespace fbmhd {

double EnergyReport::sum_components() const {
  double s = 0;
  for (int i = 0; i < 2; ++i)
    s += one_plus_L2[i] + omega_H2[i] + gradB_omega_H32_proxy[i] + a_N2a_L2Gamma[i] + gradH_N_G_L2[i] +
         gradH_N_gradBa_L2[i] + inv_a_N_gradBG_L2Gamma[i];
  return s;
}

double linearized_energy(const MhdState& s, const VectorField& w_plus, const VectorField& w_minus,
                         const BoundaryFn& sfn) {
  return 0.5 * inner(w_plus, w_plus) + 0.5 * inner(w_minus, w_minus) + integrate_boundary(s.a * sfn * sfn, *s.chart);
}

double harmonic_dirichlet_energy(const EllipticWorkspace& ws, const BoundaryFn& f, GreenRoute route) {
  if (route == GreenRoute::Boundary) return integrate_boundary(ws.dtn(f) * f, *ws.chart());
  VectorField g = grad(ws.harmonic_extension(f));
  return inner(g, g);
}

EnergyReport higher_energy(const MhdState& s, int k, GreenRoute route) {
  if (k != 3) throw Error(ErrorKind::InvalidArgument, "only k = 3 is implemented");
  const auto& c = *s.chart;
  const auto& ws = *s.ws;
  EnergyReport r;

  // a-terms are identical for both signs
  const BoundaryFn N2a = ws.dtn_power(s.a, 2);
  const double aN2a = integrate_boundary(s.a * N2a * N2a, c);
  const double gBa = harmonic_dirichlet_energy(ws, ws.dtn(s.grad_B_a), route);
  // a^{-1} weight; nodes with a <= 0 are only tolerated where the integrand vanishes
  auto inv_a_weighted = [&](const BoundaryFn& g) {
    BoundaryFn w(c.n_theta());
    for (int j = 0; j < c.n_theta(); ++j) {
      if (g[j] == 0.0) continue;
      if (!(s.a[j] > 0)) throw Error(ErrorKind::TaylorSignViolation, "a must be positive for the energy");
      w.v[j] = g[j] * g[j] / s.a[j];
    }
    return integrate_boundary(w, c);
  };

  for (int i = 0; i < 2; ++i) {
    const VectorField& W = i == 0 ? s.Wp : s.Wm;
    const ScalarField& w = i == 0 ? s.omega_p : s.omega_m;
    const BoundaryFn& G = i == 0 ? s.G_p : s.G_m;
    r.one_plus_L2[i] = inner(W, W);
    const double h2 = sobolev_norm(w, 2);
    r.omega_H2[i] = h2 * h2;
    const double fp = fractional_proxy(directional(s.B, w), 1);
    r.gradB_omega_H32_proxy[i] = fp * fp;
    r.a_N2a_L2Gamma[i] = aN2a;
    r.gradH_N_G_L2[i] = harmonic_dirichlet_energy(ws, ws.dtn(G), route);
    r.gradH_N_gradBa_L2[i] = gBa;
    const BoundaryFn NgG = ws.dtn(boundary_directional(s.B, G));
    r.inv_a_N_gradBG_L2Gamma[i] = inv_a_weighted(NgG);
  }
  r.total = 2.0 + r.sum_components();
  return r;
}

DistanceReport distance(const MhdState& x, const MhdState& y) {
  const auto& cx = *x.chart;
  if (cx.n_theta() != y.chart->n_theta())
    throw Error(ErrorKind::InvalidArgument, "states must share the angular grid");
  // both boundaries have to be graphs over the same collar
  if (x.surface().collar_delta != y.surface().collar_delta)
    throw Error(ErrorKind::CollarViolation, "states use different collars");
  const IntersectionMask m = intersect(x.surface(), y.surface(), cx.n_theta());
  const double collar = std::min(x.surface().collar_delta, y.surface().collar_delta);
  ChartPtr common = DomainChart::from_samples(m.eta_min, collar, std::max(cx.n_r(), y.chart->n_r()));

  DistanceReport d;
  for (int sgn = 0; sgn < 2; ++sgn) {
    VectorField a = transfer(sgn == 0 ? x.Wp : x.Wm, common);
    VectorField b = transfer(sgn == 0 ? y.Wp : y.Wm, common);
    VectorField e = b - a;
    (sgn == 0 ? d.interior_plus : d.interior_minus) = 0.5 * inner(e, e);
  }
  const BoundaryFn px = trace(transfer(x.P, common)), py = trace(transfer(y.P, common));
  const int nt = cx.n_theta();
  BoundaryFn wa(nt), wb(nt);
  for (int j = 0; j < nt; ++j) {
    const double dp = py[j] - px[j];
    if (m.mask_A[j]) wa.v[j] = dp * dp / x.a[j];
    if (m.mask_Ah[j]) wb.v[j] = dp * dp / y.a[j];
  }
  d.boundary_A = 0.5 * integrate_boundary_masked(wa, *common, m.mask_A);
  d.boundary_Ah = 0.5 * integrate_boundary_masked(wb, *common, m.mask_Ah);
  d.total = d.interior_plus + d.interior_minus + d.boundary_A + d.boundary_Ah;
  return d;
}

namespace {

// Largest |u(p) - u(q)| / |p - q|^alpha over radial and angular neighbours at
// one and two cells.
double holder_seminorm(const ScalarField& u, double alpha) {
  const auto& c = *u.chart;
  const int nr = c.n_r(), nt = c.n_theta();
  double best = 0;
  for (int step = 1; step <= 2; ++step)
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nt; ++j) {
        const int k = c.idx(i, j);
        int nb[2] = {i + step < nr ? c.idx(i + step, j) : -1, c.idx(i, (j + step) % nt)};
        for (int q : nb) {
          if (q < 0) continue;
          const double d = std::hypot(c.x(k) - c.x(q), c.y(k) - c.y(q));
          if (d > 0) best = std::max(best, std::abs(u[k] - u[q]) / std::pow(d, alpha));
        }
      }
  return best;
}

double periodic_holder(const std::vector<double>& f, double alpha) {
  const int n = int(f.size());
  const double dth = 2 * std::numbers::pi / n;
  double best = 0;
  for (int step = 1; step <= 2; ++step)
    for (int j = 0; j < n; ++j)
      best = std::max(best, std::abs(f[(j + step) % n] - f[j]) / std::pow(step * dth, alpha));
  return best;
}

double vec_sup(const VectorField& v) {
  double m = 0;
  for (int k = 0; k < v.size(); ++k) m = std::max({m, std::abs(v.x[k]), std::abs(v.y[k])});
  return m;
}

double grad_sup(const VectorField& v) {
  double m = 0;
  for (int comp = 0; comp < 2; ++comp) {
    VectorField g = grad(component(v, comp));
    m = std::max(m, vec_sup(g));
  }
  return m;
}

}  // namespace

ControlReport control_parameters(const MhdState& s, double holder_eps) {
  ControlReport r;
  r.field_sup = std::max(vec_sup(s.v), vec_sup(s.B));
  for (const VectorField* f : {&s.v, &s.B})
    for (int comp = 0; comp < 2; ++comp)
      r.field_holder = std::max(r.field_holder, holder_seminorm(component(*f, comp), 0.5 + holder_eps));
  r.field_grad_sup = std::max(grad_sup(s.v), grad_sup(s.B));

  const MaterialPressure mp = material_pressure(s);
  for (const ScalarField* f : {&mp.plus, &mp.minus}) {
    const VectorField g = grad(*f);
    r.dtp_w1inf = std::max(r.dtp_w1inf, max_abs(*f) + vec_sup(g));
  }

  const int nt = s.chart->n_theta();
  const auto eta = s.surface().eta.sample(nt, 0);
  const auto deta = s.surface().eta.sample(nt, 1);
  double sup0 = 0, sup1 = 0;
  for (int j = 0; j < nt; ++j) {
    sup0 = std::max(sup0, std::abs(eta[j]));
    sup1 = std::max(sup1, std::abs(deta[j]));
  }
  r.gamma_c1eps = sup0 + sup1 + periodic_holder(deta, holder_eps);
  r.gamma_c1half = sup0 + sup1 + periodic_holder(deta, 0.5);

  r.A_proxy = r.field_sup + r.field_holder + r.gamma_c1eps;
  r.A_half_proxy = r.field_sup + r.field_grad_sup + r.dtp_w1inf + r.gamma_c1half;
  return r;
}

}  // namespace fbmhd
