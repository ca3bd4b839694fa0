#include "fbmhd/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbmhd/calculus.hpp"
#include "fbmhd/elliptic.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/fourier.hpp"
#include "fbmhd/interp.hpp"
#include "fbmhd/parallel.hpp"

namespace fbmhd {

namespace {

double min_radius(const DomainChart& c) {
  double r = 1e300;
  for (int j = 0; j < c.n_theta(); ++j) r = std::min(r, c.R(j));
  return r;
}

double max_radius(const DomainChart& c) {
  double r = 0;
  for (int j = 0; j < c.n_theta(); ++j) r = std::max(r, c.R(j));
  return r;
}

// Extension past the boundary by reflection along rays,
// u(1 + t) = sum_m c_m u(1 - lambda_m t), exact for cubics in rho and bounded
// (sum |c_m| = 40.6) however far out it is evaluated.
constexpr double kRefl[4] = {0.5, 1.0, 2.0, 3.0};
constexpr double kReflC[4] = {12.8, -18.0, 8.0, -1.8};

void lagrange4(double t, double w[4]) {
  // nodes -1, 0, 1, 2
  w[0] = -t * (t - 1) * (t - 2) / 6.0;
  w[1] = (t + 1) * (t - 1) * (t - 2) / 2.0;
  w[2] = -(t + 1) * t * (t - 2) / 2.0;
  w[3] = (t + 1) * t * (t - 1) / 6.0;
}

std::vector<std::vector<double>> mollify_fields(const ChartPtr& cp, const std::vector<const std::vector<double>*>& f,
                                                double s, double shift_c) {
  const auto& c = *cp;
  if (!(s >= 0) || !(shift_c >= 0)) throw Error(ErrorKind::InvalidArgument, "mollifier scale and shift must be >= 0");
  const double margin = c.surface().collar_margin();
  if (s > 0 && s >= margin) throw Error(ErrorKind::ScaleTooCoarse, "mollifier scale reaches the collar margin");
  if (shift_c * s > 0.5 * margin) throw Error(ErrorKind::ScaleTooCoarse, "inward shift exceeds half the collar margin");

  const int nf = int(f.size());
  const double cell = c.h() * min_radius(c);
  const double shrink = 1.0 - shift_c * s;
  std::vector<std::vector<double>> out(nf, std::vector<double>(c.size()));

  if (s < kMinMollifyCells * cell) {
    if (shrink == 1.0) {
      for (int a = 0; a < nf; ++a) out[a] = *f[a];
      return out;
    }
    ChartInterpolator I(cp, f);
    parallel_for(c.size(), [&](int b, int e) {
      double v[8];
      for (int k = b; k < e; ++k) {
        I.eval(shrink * c.x(k), shrink * c.y(k), v);
        for (int a = 0; a < nf; ++a) out[a][k] = v[a];
      }
    });
    return out;
  }

  const double d = std::min(0.5 * cell, 0.25 * s);
  const auto w = MollifierKernel{s, shift_c}.weights(d);
  const int m = int(w.size()) / 2;
  const double L = max_radius(c) + s + 3 * d;
  const int n = int(std::ceil(2 * L / d)) + 1;
  const double x0 = -L;
  // radial band (in rho units) the samples may need
  const double band = 1.2 * std::sqrt(2.0) * (s + 3 * d) / min_radius(c);
  if (kRefl[3] * band >= 1.0) throw Error(ErrorKind::ScaleTooCoarse, "mollifier support too wide for the extension");
  const double nan = std::numeric_limits<double>::quiet_NaN();

  ChartInterpolator I(cp, f);
  std::vector<std::vector<double>> g(nf, std::vector<double>(size_t(n) * n, nan));
  parallel_for(n, [&](int b, int e) {
    double v[8], t[8];
    for (int iy = b; iy < e; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double x = x0 + ix * d, y = x0 + iy * d;
        const auto cc = chart_coordinates(c, x, y);
        if (cc.rho > 1.0 + band) continue;
        if (cc.rho <= 1.0) {
          I.eval_chart(cc.rho, cc.theta, v);
        } else {
          std::fill(v, v + nf, 0.0);
          for (int q = 0; q < 4; ++q) {
            I.eval_chart(1.0 - kRefl[q] * (cc.rho - 1.0), cc.theta, t);
            for (int a = 0; a < nf; ++a) v[a] += kReflC[q] * t[a];
          }
        }
        for (int a = 0; a < nf; ++a) g[a][size_t(iy) * n + ix] = v[a];
      }
  });

  // separable convolution; NaN marks values whose support left the sampled band
  std::vector<double> tmp(size_t(n) * n);
  for (int a = 0; a < nf; ++a) {
    auto& u = g[a];
    parallel_for(n, [&](int b, int e) {
      for (int iy = b; iy < e; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          if (ix < m || ix >= n - m) {
            tmp[size_t(iy) * n + ix] = nan;
            continue;
          }
          double acc = 0;
          const double* row = &u[size_t(iy) * n + ix - m];
          for (int p = 0; p <= 2 * m; ++p) acc += w[p] * row[p];
          tmp[size_t(iy) * n + ix] = acc;
        }
    });
    parallel_for(n, [&](int b, int e) {
      for (int iy = b; iy < e; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          if (iy < m || iy >= n - m) {
            u[size_t(iy) * n + ix] = nan;
            continue;
          }
          double acc = 0;
          for (int p = 0; p <= 2 * m; ++p) acc += w[p] * tmp[size_t(iy - m + p) * n + ix];
          u[size_t(iy) * n + ix] = acc;
        }
    });
  }

  parallel_for(c.size(), [&](int b, int e) {
    for (int k = b; k < e; ++k) {
      const double gx = (shrink * c.x(k) - x0) / d, gy = (shrink * c.y(k) - x0) / d;
      const int ix = int(std::floor(gx)), iy = int(std::floor(gy));
      double wx[4], wy[4];
      lagrange4(gx - ix, wx);
      lagrange4(gy - iy, wy);
      for (int a = 0; a < nf; ++a) {
        double acc = 0;
        for (int q = 0; q < 4; ++q) {
          const double* row = &g[a][size_t(iy - 1 + q) * n + ix - 1];
          acc += wy[q] * (wx[0] * row[0] + wx[1] * row[1] + wx[2] * row[2] + wx[3] * row[3]);
        }
        out[a][k] = acc;
      }
    }
  });
  for (int a = 0; a < nf; ++a)
    for (double v : out[a])
      if (!std::isfinite(v)) throw Error(ErrorKind::ScaleTooCoarse, "mollifier support left the extrapolation band");
  return out;
}

}  // namespace

double MollifierKernel::profile(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

std::vector<double> MollifierKernel::weights(double d) const {
  if (!(scale > 0) || !(d > 0)) throw Error(ErrorKind::InvalidArgument, "kernel scale and spacing must be positive");
  const int m = std::max(1, int(std::ceil(scale / d)) - 1);
  double m0 = 0, m2 = 0, m4 = 0;
  for (int p = -m; p <= m; ++p) {
    const double t = p * d / scale, ph = profile(t);
    m0 += ph;
    m2 += ph * t * t;
    m4 += ph * t * t * t * t;
  }
  // alpha m0 + beta m2 = 1, alpha m2 + beta m4 = 0
  const double det = m0 * m4 - m2 * m2;
  const double alpha = m4 / det, beta = -m2 / det;
  std::vector<double> w(2 * m + 1);
  for (int p = -m; p <= m; ++p) {
    const double t = p * d / scale;
    w[p + m] = profile(t) * (alpha + beta * t * t);
  }
  return w;
}

ScalarField mollify(const ScalarField& u, double s, double shift_c) {
  auto r = mollify_fields(u.chart, {&u.v}, s, shift_c);
  return ScalarField(u.chart, std::move(r[0]));
}

VectorField mollify(const VectorField& u, double s, double shift_c) {
  auto r = mollify_fields(u.chart, {&u.x, &u.y}, s, shift_c);
  return VectorField(u.chart, std::move(r[0]), std::move(r[1]));
}

VectorField divfree_mollify(const VectorField& v, double s, const ProjectionOptions& opt) {
  return div_free_projection(mollify(v, s), opt);
}

VectorField tangency_correct(const VectorField& B, const ProjectionOptions& opt) { return rot_projection(B, opt); }

Split<ScalarField> frequency_split(const ScalarField& u, double s) {
  auto low = mollify(u, s);
  auto high = u - low;
  return {std::move(low), std::move(high)};
}

Split<VectorField> frequency_split(const VectorField& u, double s) {
  auto low = mollify(u, s);
  auto high = u - low;
  return {std::move(low), std::move(high)};
}

LxSystem::LxSystem(const VectorField& X, double eps) : chart_(X.chart), eps_(eps) {
  const auto& c = *chart_;
  a_.resize(c.size());
  b_.resize(c.size());
  for (int k = 0; k < c.size(); ++k) {
    a_[k] = X.x[k] * c.rho_x(k) + X.y[k] * c.rho_y(k);
    b_[k] = X.x[k] * c.theta_x(k) + X.y[k] * c.theta_y(k);
  }
}

void LxSystem::apply_T(const std::vector<double>& u, std::vector<double>& out) const {
  const auto& c = *chart_;
  const auto& D = RadialStencil::get(c.n_r(), c.h(), 1);
  std::vector<double> ur(u.size()), ut(u.size());
  D.apply(u.data(), ur.data(), c.n_theta());
  fourier::derivative_rings(u.data(), ut.data(), c.n_r(), c.n_theta(), 1);
  out.resize(u.size());
  for (size_t k = 0; k < u.size(); ++k) out[k] = a_[k] * ur[k] + b_[k] * ut[k];
}

void LxSystem::apply_T_transpose(const std::vector<double>& w, std::vector<double>& out) const {
  const auto& c = *chart_;
  const auto& D = RadialStencil::get(c.n_r(), c.h(), 1);
  std::vector<double> aw(w.size()), bw(w.size()), r1(w.size()), r2(w.size());
  for (size_t k = 0; k < w.size(); ++k) {
    aw[k] = a_[k] * w[k];
    bw[k] = b_[k] * w[k];
  }
  D.apply_transpose(aw.data(), r1.data(), c.n_theta());
  // the spectral theta derivative is antisymmetric
  fourier::derivative_rings(bw.data(), r2.data(), c.n_r(), c.n_theta(), 1);
  out.resize(w.size());
  for (size_t k = 0; k < w.size(); ++k) out[k] = r1[k] - r2[k];
}

void LxSystem::apply_S(const std::vector<double>& u, std::vector<double>& out) const {
  const auto& W = chart_->weights();
  std::vector<double> t, mu(u.size()), ts;
  apply_T(u, t);
  for (size_t k = 0; k < u.size(); ++k) mu[k] = W[k] * u[k];
  apply_T_transpose(mu, ts);
  out.resize(u.size());
  for (size_t k = 0; k < u.size(); ++k) out[k] = 0.5 * (t[k] - ts[k] / W[k]);
}

std::vector<double> LxSystem::S(const std::vector<double>& u) const {
  std::vector<double> r;
  apply_S(u, r);
  return r;
}

void LxSystem::apply(const std::vector<double>& u, std::vector<double>& out) const {
  std::vector<double> a, b;
  apply_S(u, a);
  apply_S(a, b);
  apply_S(b, a);
  apply_S(a, b);
  out.resize(u.size());
  const double e2 = eps_ * eps_;
  for (size_t k = 0; k < u.size(); ++k) out[k] = u[k] + e2 * b[k];
}

ScalarField lx_solve(const LxSystem& sys, const ScalarField& u, double tol, int max_iter) {
  if (u.chart != sys.chart()) throw Error(ErrorKind::InvalidArgument, "field and L_X system live on different charts");
  if (sys.eps() == 0.0) return u;
  const auto& W = sys.chart()->weights();
  // symmetric form: M (I + eps^2 S^4)
  LinearOp A = [&](const std::vector<double>& x, std::vector<double>& y) {
    sys.apply(x, y);
    for (size_t k = 0; k < y.size(); ++k) y[k] *= W[k];
  };
  LinearOp Minv = [&](const std::vector<double>& r, std::vector<double>& z) {
    z.resize(r.size());
    for (size_t k = 0; k < r.size(); ++k) z[k] = r[k] / W[k];
  };
  std::vector<double> b(u.v.size()), x = u.v;
  for (size_t k = 0; k < b.size(); ++k) b[k] = W[k] * u.v[k];
  double nb = 0;
  for (double v : b) nb += v * v;
  if (nb == 0.0) return ScalarField(u.chart);
  pcg(A, Minv, b, x, tol, max_iter);
  return ScalarField(u.chart, std::move(x));
}

VectorField lx_solve(const LxSystem& sys, const VectorField& u, double tol, int max_iter) {
  auto a = lx_solve(sys, component(u, 0), tol, max_iter);
  auto b = lx_solve(sys, component(u, 1), tol, max_iter);
  return VectorField(u.chart, std::move(a.v), std::move(b.v));
}

AlongBResult regularize_along_B(const VectorField& v, const VectorField& B, double eps, const AlongBConfig& cfg) {
  if (!(eps >= 0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be >= 0");
  if (v.chart != B.chart) throw Error(ErrorKind::InvalidArgument, "v and B live on different charts");
  const auto& c = *B.chart;
  const double s = cfg.split_scale_cells * c.h() * min_radius(c);
  ProjectionOptions po;
  po.tol = cfg.tol_elliptic;

  auto vs = frequency_split(v, s);
  auto Bs = frequency_split(B, s);
  const double ref = std::max(1.0, l2_norm(B));

  AlongBResult r;
  VectorField Y = B;
  double prev = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (int it = 1; it <= std::max(1, cfg.max_fp_iters); ++it) {
    LxSystem L(Y, eps);
    VectorField Bn = rot_projection(Bs.low + lx_solve(L, Bs.high, cfg.tol_elliptic), po);
    const double change = l2_norm(Bn - Y);
    Y = std::move(Bn);
    r.iterations = it;
    r.last_change = change;
    growth = change > prev ? growth + 1 : 0;
    if (growth >= 3)
      throw Error(ErrorKind::FixedPointDiverged, "field-line fixed point grew for 3 consecutive iterations");
    prev = change;
    if (change <= cfg.tol_fp * ref || eps == 0.0) break;
  }
  LxSystem L(Y, eps);
  r.v = div_free_projection(vs.low + lx_solve(L, vs.high, cfg.tol_elliptic), po);
  r.B = std::move(Y);
  return r;
}

}  // namespace fbmhd
