#include "fbmhd/stepper.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "fbmhd/calculus.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/fourier.hpp"
#include "fbmhd/interp.hpp"
#include "fbmhd/parallel.hpp"
#include "fbmhd/projection.hpp"
#include "fbmhd/regularization.hpp"

namespace fbmhd {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

template <class F>
auto staged(const char* stage, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.stage().empty() ? e.with_stage(stage) : e;
  }
}

double wrap(double a) {
  a = std::fmod(a + std::numbers::pi, two_pi);
  if (a < 0) a += two_pi;
  return a - std::numbers::pi;
}

ProjectionOptions proj(const StepConfig& cfg) {
  ProjectionOptions p;
  p.tol = cfg.tol_elliptic;
  return p;
}

bool same_resolution(const DomainChart& c, const StepConfig& cfg) {
  return c.n_r() == cfg.n_r && c.n_theta() == cfg.n_theta;
}

struct Regularized {
  MhdState s;
  int fp_iterations = 0;
};

Regularized regularize_impl(const MhdState& s, const StepConfig& cfg) {
  cfg.validate();
  const double eps = cfg.epsilon;
  if (eps == 0.0) return {s, 0};
  const auto po = proj(cfg);
  ChartPtr chart = s.chart;
  VectorField v = s.v, B = s.B;

  staged("regularize/surface", [&] {
    SurfaceGraph surf = cfg.step1_surface ? heat_regularize(s.surface(), eps, cfg.heat_margin) : s.surface();
    const bool moved = surf.eta.coeffs() != s.surface().eta.coeffs();
    if (moved || !same_resolution(*chart, cfg)) {
      chart = make_chart(surf, cfg.n_r, cfg.n_theta);
      v = div_free_projection(transfer(v, chart), po);
      B = rot_projection(transfer(B, chart), po);
    }
    return 0;
  });

  staged("regularize/mollify", [&] {
    if (!cfg.step2_mollify) return 0;
    const double s3 = eps * eps * eps;
    const double cell = chart->h() * (1.0 - chart->surface().max_abs_eta);
    if (s3 < kMinMollifyCells * cell && cfg.mollify_shift == 0.0) return 0;
    v = div_free_projection(mollify(v, s3, cfg.mollify_shift), po);
    B = rot_projection(mollify(B, s3, cfg.mollify_shift), po);
    return 0;
  });

  int fp = 0;
  staged("regularize/fieldline", [&] {
    if (!cfg.step3_fieldline) return 0;
    AlongBConfig ac;
    ac.split_scale_cells = cfg.split_scale_cells;
    ac.max_fp_iters = cfg.max_fp_iters;
    ac.tol_fp = cfg.tol_fp;
    ac.tol_elliptic = cfg.tol_elliptic;
    auto r = regularize_along_B(v, B, eps, ac);
    v = std::move(r.v);
    B = std::move(r.B);
    fp = r.iterations;
    return 0;
  });

  MhdState out = staged("regularize/assemble", [&] { return assemble(chart, v, B, cfg.state_config()); });
  return {std::move(out), fp};
}

double boundary_sup_diff(const DomainChart& a, const DomainChart& b) {
  double m = 0;
  if (a.n_theta() == b.n_theta()) {
    for (int j = 0; j < a.n_theta(); ++j) m = std::max(m, std::abs(a.R(j) - b.R(j)));
    return m;
  }
  for (int j = 0; j < a.n_theta(); ++j) m = std::max(m, std::abs(a.R(j) - boundary_radius(b, a.theta(j))));
  return m;
}

HaltReason halt_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::TaylorSignViolation: return HaltReason::TaylorSign;
    case ErrorKind::CollarViolation: return HaltReason::CollarExit;
    case ErrorKind::NotStarShaped: return HaltReason::NotStarShaped;
    case ErrorKind::SolverDiverged:
    case ErrorKind::FixedPointDiverged: return HaltReason::SolverFailure;
    case ErrorKind::DivergenceViolation:
    case ErrorKind::TangencyViolation: return HaltReason::ConstraintViolation;
    default: return HaltReason::Other;
  }
}

}  // namespace

const char* halt_name(HaltReason r) {
  switch (r) {
    case HaltReason::None: return "none";
    case HaltReason::TaylorSign: return "taylor_sign";
    case HaltReason::CollarExit: return "collar_exit";
    case HaltReason::NotStarShaped: return "not_star_shaped";
    case HaltReason::SolverFailure: return "solver_failure";
    case HaltReason::ConstraintViolation: return "constraint_violation";
    case HaltReason::Other: return "error";
  }
  return "error";
}

StateConfig StepConfig::state_config() const {
  StateConfig s;
  s.tol_elliptic = tol_elliptic;
  s.tol_div = tol_div;
  s.tol_tangency = tol_tangency;
  s.c0_min = c0_min;
  s.check_taylor = check_taylor;
  s.reproject = false;  // the stepper projects explicitly
  return s;
}

void StepConfig::validate() const {
  if (!(epsilon >= 0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
  if (n_r < 8 || n_theta < 8 || n_theta % 2) throw Error(ErrorKind::InvalidArgument, "resolution too small or odd");
  if (modes() >= n_theta / 2) throw Error(ErrorKind::InvalidArgument, "M must be below n_theta / 2");
  if (!(tol_elliptic > 0) || !(tol_div > 0) || !(tol_tangency > 0))
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  if (!(collar_delta > 0)) throw Error(ErrorKind::InvalidArgument, "collar_delta must be positive");
  if (!(split_scale_cells > 0) || max_fp_iters < 1 || inverse_map_iters < 1)
    throw Error(ErrorKind::InvalidArgument, "bad regularization settings");
}

MhdState regularize_state(const MhdState& s, const StepConfig& cfg) { return regularize_impl(s, cfg).s; }

std::vector<double> transported_boundary(const DomainChart& c, const VectorField& v, double eps) {
  const int n = c.n_theta();
  const int b = c.boundary_ring();
  std::vector<double> X(n), Y(n);
  for (int j = 0; j < n; ++j) {
    const int k = c.idx(b, j);
    X[j] = c.x(k) + eps * v.x[k];
    Y[j] = c.y(k) + eps * v.y[k];
  }
  const auto cx = fourier::coefficients(X.data(), n), cy = fourier::coefficients(Y.data(), n);
  auto angle_rate = [&](double p) {
    const double x = fourier::evaluate(cx.data(), n, p), y = fourier::evaluate(cy.data(), n, p);
    const double xp = fourier::evaluate_derivative(cx.data(), n, p), yp = fourier::evaluate_derivative(cy.data(), n, p);
    return (x * yp - y * xp) / (x * x + y * y);
  };
  // the curve is a graph over the circle iff its polar angle increases monotonically
  const int probe = 8 * n;
  for (int q = 0; q < probe; ++q)
    if (!(angle_rate(two_pi * q / probe) > 0))
      throw Error(ErrorKind::NotStarShaped, "transported boundary is not a graph over the circle");

  std::vector<double> eta(n);
  for (int j = 0; j < n; ++j) {
    const double target = c.theta(j);
    double p = target;
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      const double x = fourier::evaluate(cx.data(), n, p), y = fourier::evaluate(cy.data(), n, p);
      const double g = wrap(std::atan2(y, x) - target);
      if (std::abs(g) < 1e-15) {
        ok = true;
        break;
      }
      double dp = -g / angle_rate(p);
      dp = std::clamp(dp, -0.5, 0.5);
      p += dp;
      if (std::abs(dp) < 1e-15) {
        ok = true;
        break;
      }
    }
    if (!ok) throw Error(ErrorKind::NotStarShaped, "ray intersection did not converge");
    const double x = fourier::evaluate(cx.data(), n, p), y = fourier::evaluate(cy.data(), n, p);
    eta[j] = std::hypot(x, y) - 1.0;
  }
  return eta;
}

MhdState euler_transport(const MhdState& reg, const StepConfig& cfg) {
  cfg.validate();
  const double eps = cfg.epsilon;
  if (eps == 0.0) return reg;
  const auto& c0 = *reg.chart;
  const auto po = proj(cfg);

  ChartPtr chart1 = staged("transport/boundary", [&] {
    auto eta = transported_boundary(c0, reg.v, eps);
    if (c0.n_theta() != cfg.n_theta) {
      // resample through the trigonometric interpolant
      auto co = fourier::coefficients(eta.data(), c0.n_theta());
      std::vector<double> e2(cfg.n_theta);
      for (int j = 0; j < cfg.n_theta; ++j) e2[j] = fourier::evaluate(co.data(), c0.n_theta(), two_pi * j / cfg.n_theta);
      eta = std::move(e2);
    }
    auto surf = build_surface(BoundarySeries::from_samples(eta, cfg.modes()), cfg.collar_delta);
    return make_chart(surf, cfg.n_r, cfg.n_theta);
  });

  // fields pushed forward along x -> x + eps v
  const ScalarField& P = reg.P;
  VectorField Fv = reg.v - eps * (grad(P) - directional(reg.B, reg.B));
  VectorField FB = reg.B + eps * directional(reg.B, reg.v);

  const auto& c1 = *chart1;
  VectorField tv(chart1), tB(chart1);
  staged("transport/inverse_map", [&] {
    ChartInterpolator I(reg.chart, {&reg.v.x, &reg.v.y, &Fv.x, &Fv.y, &FB.x, &FB.y}, 4.0);
    parallel_for(c1.size(), [&](int b, int e) {
      double f[6];
      for (int k = b; k < e; ++k) {
        const double x1 = c1.x(k), y1 = c1.y(k);
        double x = x1, y = y1;
        I.eval(x, y, f);
        for (int it = 0; it < cfg.inverse_map_iters; ++it) {
          const double nx = x1 - eps * f[0], ny = y1 - eps * f[1];
          const double dx = std::hypot(nx - x, ny - y);
          x = nx;
          y = ny;
          I.eval(x, y, f);
          if (dx < cfg.tol_inverse_map) break;
        }
        tv.x[k] = f[2];
        tv.y[k] = f[3];
        tB.x[k] = f[4];
        tB.y[k] = f[5];
      }
    });
    return 0;
  });

  VectorField v1 = staged("transport/correct", [&] { return div_free_projection(tv, po); });
  VectorField B1 = staged("transport/correct", [&] { return rot_projection(tB, po); });
  return staged("transport/assemble", [&] { return assemble(chart1, v1, B1, cfg.state_config()); });
}

std::pair<MhdState, StepReport> step(const MhdState& s, const StepConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  StepReport r;
  r.epsilon = cfg.epsilon;
  const auto d0 = diagnostics(s);
  r.energy_before = d0.total_energy;
  r.a_min_before = d0.a_min;
  if (cfg.compute_energy) r.E3_before = staged("energy", [&] { return higher_energy(s); });

  auto reg = regularize_impl(s, cfg);
  r.fp_iterations = reg.fp_iterations;
  MhdState s1 = euler_transport(reg.s, cfg);

  const auto d1 = diagnostics(s1);
  r.energy_after = d1.total_energy;
  r.a_min_after = d1.a_min;
  r.tangency_residual = d1.tangency_residual;
  r.div_residual_v = d1.div_residual_v;
  r.div_residual_B = d1.div_residual_B;
  r.boundary_displacement_sup = boundary_sup_diff(*s1.chart, *s.chart);
  if (cfg.compute_energy) r.E3_after = staged("energy", [&] { return higher_energy(s1); });

  // first-order consistency with the unregularized state
  const double eps = cfg.epsilon;
  VectorField G = s.v - eps * (directional(s.v, s.v) - directional(s.B, s.B) + grad(s.P));
  ChartInterpolator I(G, 0.0);
  const auto& c0 = *s.chart;
  const auto& c1 = *s1.chart;
  double res = 0;
  double g[2];
  for (int k = 0; k < c1.size(); ++k) {
    const auto cc = chart_coordinates(c0, c1.x(k), c1.y(k));
    if (cc.rho > 1.0) continue;
    I.eval_chart(cc.rho, cc.theta, g);
    res = std::max({res, std::abs(s1.v.x[k] - g[0]), std::abs(s1.v.y[k] - g[1])});
  }
  r.contract_residual = res;
  r.contract_K = eps > 0 ? res / (eps * eps) : 0.0;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(s1), r};
}

RunRow row_of(const MhdState& s, double t, bool with_energy) {
  RunRow row;
  const auto d = diagnostics(s);
  row.t = t;
  row.E_total = d.total_energy;
  row.E3_total = with_energy ? higher_energy(s).total : std::numeric_limits<double>::quiet_NaN();
  row.a_min = d.a_min;
  row.tangency_res = d.tangency_residual;
  row.div_res_v = d.div_residual_v;
  row.div_res_B = d.div_residual_B;
  row.max_vorticity = max_abs(curl(s.v));
  return row;
}

RunLog run(const MhdState& s0, double T, const StepConfig& cfg, int snapshot_every) {
  RunLog log;
  if (!(T >= 0)) throw Error(ErrorKind::InvalidArgument, "T must be >= 0");
  cfg.validate();
  log.rows.push_back(row_of(s0, 0.0, cfg.compute_energy));
  if (snapshot_every > 0) log.snapshots.emplace_back(0.0, s0);
  log.final_state = s0;
  if (T == 0.0) return log;
  if (!(cfg.epsilon > 0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive for a run");
  if (log.rows[0].a_min < cfg.c0_min) {
    log.halt = HaltReason::TaylorSign;
    log.halt_message = "initial state violates the Taylor sign condition";
    return log;
  }

  const int n = int(std::ceil(T / cfg.epsilon - 1e-9));
  MhdState cur = s0;
  double t = 0;
  for (int i = 0; i < n; ++i) {
    StepConfig c = cfg;
    c.epsilon = std::min(cfg.epsilon, T - t);
    try {
      auto [next, rep] = step(cur, c);
      t = (i + 1 == n) ? T : t + c.epsilon;
      rep.t = t;
      RunRow row;
      row.t = t;
      row.E_total = rep.energy_after;
      row.E3_total = cfg.compute_energy ? rep.E3_after.total : std::numeric_limits<double>::quiet_NaN();
      row.a_min = rep.a_min_after;
      row.tangency_res = rep.tangency_residual;
      row.div_res_v = rep.div_residual_v;
      row.div_res_B = rep.div_residual_B;
      row.boundary_sup_disp = boundary_sup_diff(*next.chart, *s0.chart);
      row.max_vorticity = max_abs(curl(next.v));
      row.wall_time = rep.wall_time;
      log.rows.push_back(row);
      log.steps.push_back(rep);
      cur = std::move(next);
      if (snapshot_every > 0 && (i + 1) % snapshot_every == 0) log.snapshots.emplace_back(t, cur);
    } catch (const Error& e) {
      log.halt = halt_of(e.kind());
      log.halt_message = e.what();
      if (!e.stage().empty()) log.halt_message += " [" + e.stage() + "]";
      break;
    }
  }
  log.final_state = cur;
  if (snapshot_every > 0 && log.snapshots.back().first != t) log.snapshots.emplace_back(t, cur);
  return log;
}

std::vector<ConvergenceRow> self_convergence(const MhdState& s0, double T, const std::vector<double>& eps_list,
                                             const StepConfig& cfg) {
  std::vector<ConvergenceRow> out;
  if (eps_list.size() < 2) return out;
  std::vector<MhdState> finals;
  for (double e : eps_list) {
    StepConfig c = cfg;
    c.epsilon = e;
    c.compute_energy = false;
    auto log = run(s0, T, c);
    if (log.halt != HaltReason::None)
      throw Error(ErrorKind::SolverDiverged, "run at eps = " + std::to_string(e) + " halted: " + log.halt_message);
    finals.push_back(std::move(log.final_state));
  }
  for (size_t i = 0; i + 1 < finals.size(); ++i) {
    ConvergenceRow r;
    r.eps_a = eps_list[i];
    r.eps_b = eps_list[i + 1];
    r.d = distance(finals[i], finals[i + 1]);
    r.order = std::numeric_limits<double>::quiet_NaN();
    if (i > 0) {
      const auto& p = out.back();
      r.order = std::log(std::sqrt(p.d.total / r.d.total)) / std::log(p.eps_a / r.eps_a);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace fbmhd
