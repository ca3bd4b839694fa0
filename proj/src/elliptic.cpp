#include "fbmhd/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fbmhd/calculus.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/fourier.hpp"

namespace fbmhd {

using cplx = std::complex<double>;

namespace {
thread_local SolveStats t_last;

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}
}  // namespace

SolveStats last_solve_stats() { return t_last; }

SolveStats pcg(const LinearOp& A, const LinearOp& Minv, const std::vector<double>& b, std::vector<double>& x,
               double tol, int max_iter, const std::function<void(std::vector<double>&)>& project) {
  const size_t n = b.size();
  SolveStats st;
  x.assign(n, 0.0);
  std::vector<double> r = b;
  if (project) project(r);
  const double bnorm = std::sqrt(dotv(r, r));
  if (bnorm == 0) {
    t_last = st;
    return st;
  }
  std::vector<double> z(n), p(n), Ap(n);
  Minv(r, z);
  if (project) project(z);
  p = z;
  double rz = dotv(r, z);
  for (int it = 1; it <= max_iter; ++it) {
    A(p, Ap);
    const double pAp = dotv(p, Ap);
    if (!(pAp > 0)) break;
    const double alpha = rz / pAp;
    for (size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * Ap[k];
    }
    if (project) project(r);
    const double rn = std::sqrt(dotv(r, r));
    st.iterations = it;
    st.relative_residual = rn / bnorm;
    if (st.relative_residual <= tol) {
      if (project) project(x);
      t_last = st;
      return st;
    }
    Minv(r, z);
    if (project) project(z);
    const double rz_new = dotv(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
  t_last = st;
  char msg[96];
  std::snprintf(msg, sizeof msg, "CG stopped at relative residual %.3e after %d iterations", st.relative_residual,
                st.iterations);
  throw Error(ErrorKind::SolverDiverged, msg);
}

SolveStats gmres(const LinearOp& A, const LinearOp& Minv, const std::vector<double>& b, std::vector<double>& x,
                 double tol, int max_iter, int restart) {
  const size_t n = b.size();
  SolveStats st;
  x.assign(n, 0.0);
  const double bnorm = std::sqrt(dotv(b, b));
  if (bnorm == 0) {
    t_last = st;
    return st;
  }
  std::vector<double> r = b, w(n), z(n);
  std::vector<std::vector<double>> V, Z;
  std::vector<double> H, cs, sn, g;
  int total = 0;
  double rn = bnorm;
  while (total < max_iter) {
    const int m = std::min(restart, max_iter - total);
    V.assign(m + 1, std::vector<double>(n));
    Z.assign(m, std::vector<double>(n));
    H.assign(size_t(m + 1) * m, 0.0);
    cs.assign(m, 0.0);
    sn.assign(m, 0.0);
    g.assign(m + 1, 0.0);
    g[0] = rn;
    for (size_t k = 0; k < n; ++k) V[0][k] = r[k] / rn;
    int used = 0;
    for (int j = 0; j < m; ++j) {
      Minv(V[j], Z[j]);
      A(Z[j], w);
      for (int i = 0; i <= j; ++i) {
        const double hij = dotv(w, V[i]);
        H[i * m + j] = hij;
        for (size_t k = 0; k < n; ++k) w[k] -= hij * V[i][k];
      }
      const double hn = std::sqrt(dotv(w, w));
      H[(j + 1) * m + j] = hn;
      if (hn > 0)
        for (size_t k = 0; k < n; ++k) V[j + 1][k] = w[k] / hn;
      for (int i = 0; i < j; ++i) {
        const double a = H[i * m + j], bb = H[(i + 1) * m + j];
        H[i * m + j] = cs[i] * a + sn[i] * bb;
        H[(i + 1) * m + j] = -sn[i] * a + cs[i] * bb;
      }
      const double a = H[j * m + j], bb = H[(j + 1) * m + j];
      const double d = std::hypot(a, bb);
      cs[j] = d > 0 ? a / d : 1.0;
      sn[j] = d > 0 ? bb / d : 0.0;
      H[j * m + j] = d;
      H[(j + 1) * m + j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      used = j + 1;
      ++total;
      if (std::abs(g[j + 1]) <= tol * bnorm || hn == 0) break;
    }
    std::vector<double> yv(used);
    for (int i = used - 1; i >= 0; --i) {
      double s = g[i];
      for (int l = i + 1; l < used; ++l) s -= H[i * m + l] * yv[l];
      yv[i] = s / H[i * m + i];
    }
    for (int i = 0; i < used; ++i)
      for (size_t k = 0; k < n; ++k) x[k] += yv[i] * Z[i][k];
    A(x, w);
    for (size_t k = 0; k < n; ++k) r[k] = b[k] - w[k];
    rn = std::sqrt(dotv(r, r));
    st.iterations = total;
    st.relative_residual = rn / bnorm;
    if (st.relative_residual <= tol) {
      t_last = st;
      return st;
    }
  }
  t_last = st;
  char msg[96];
  std::snprintf(msg, sizeof msg, "GMRES stopped at relative residual %.3e after %d iterations", st.relative_residual,
                st.iterations);
  throw Error(ErrorKind::SolverDiverged, msg);
}

DiskPreconditioner::DiskPreconditioner(const DomainChart& c, bool dirichlet)
    : n_r_(c.n_r()), n_t_(c.n_theta()), m_(dirichlet ? c.n_r() - 1 : c.n_r()), dirichlet_(dirichlet) {
  const int modes = n_t_ / 2 + 1;
  const double h = c.h(), dth = c.dtheta();
  lower_.assign(modes * m_, 0.0);
  diag_.assign(modes * m_, 0.0);
  upper_.assign(modes * m_, 0.0);
  for (int k = 0; k < modes; ++k) {
    double* lo = &lower_[k * m_];
    double* d = &diag_[k * m_];
    double* up = &upper_[k * m_];
    for (int i = 0; i < m_; ++i) d[i] = c.beta(i) * dth * double(k) * k / c.rho(i);
    for (int f = 0; f + 1 < n_r_; ++f) {
      const double a = dth * (f + 1) * h / h;
      if (f < m_) d[f] += a;
      if (f + 1 < m_) {
        d[f + 1] += a;
        up[f] = -a;
        lo[f + 1] = -a;
      }
    }
    if (!dirichlet && k == 0) {
      // constants span the kernel: pin the innermost node
      d[0] = 1.0;
      up[0] = 0.0;
      lo[1] = 0.0;
    }
    // in-place LU for the Thomas sweep
    for (int i = 1; i < m_; ++i) {
      lo[i] /= d[i - 1];
      d[i] -= lo[i] * up[i - 1];
    }
  }
}

void DiskPreconditioner::apply(const std::vector<double>& r, std::vector<double>& z) const {
  const int modes = n_t_ / 2 + 1;
  std::vector<cplx> spec(size_t(m_) * modes);
  for (int i = 0; i < m_; ++i) fourier::forward(&r[i * n_t_], &spec[size_t(i) * modes], n_t_);
  std::vector<cplx> col(m_);
  for (int k = 0; k < modes; ++k) {
    const double* lo = &lower_[k * m_];
    const double* d = &diag_[k * m_];
    const double* up = &upper_[k * m_];
    for (int i = 0; i < m_; ++i) col[i] = spec[size_t(i) * modes + k];
    if (!dirichlet_ && k == 0) col[0] = 0.0;
    for (int i = 1; i < m_; ++i) col[i] -= lo[i] * col[i - 1];
    col[m_ - 1] /= d[m_ - 1];
    for (int i = m_ - 2; i >= 0; --i) col[i] = (col[i] - up[i] * col[i + 1]) / d[i];
    for (int i = 0; i < m_; ++i) spec[size_t(i) * modes + k] = col[i] / double(n_t_);
  }
  z.assign(r.size(), 0.0);
  for (int i = 0; i < m_; ++i) fourier::backward(&spec[size_t(i) * modes], &z[i * n_t_], n_t_);
}

EllipticWorkspace::EllipticWorkspace(ChartPtr chart, double tol, int max_iter)
    : chart_(std::move(chart)), tol_(tol), max_iter_(max_iter), pre_dir_(*chart_, true), pre_neu_(*chart_, false) {
  const auto& c = *chart_;
  const int nr = c.n_r(), nt = c.n_theta();
  const double h = c.h(), dth = c.dtheta();
  face_c_.resize((nr - 1) * nt);
  face_w_.resize((nr - 1) * nt);
  for (int f = 0; f + 1 < nr; ++f) {
    const double rf = (f + 1) * h;
    for (int j = 0; j < nt; ++j) {
      face_c_[f * nt + j] = c.q(j) / (rf * c.p(j));
      face_w_[f * nt + j] = h * dth * rf * c.p(j);
    }
  }
  node_w_.resize(nr * nt);
  nyq_.resize(nr);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) node_w_[i * nt + j] = c.beta(i) * dth / (c.rho(i) * c.p(j));
    nyq_[i] = c.beta(i) * dth * (nt / 2.0) * (nt / 2.0) / c.rho(i);
  }
}

void EllipticWorkspace::apply(const std::vector<double>& u, std::vector<double>& y) const {
  const auto& c = *chart_;
  const int nr = c.n_r(), nt = c.n_theta();
  const double h = c.h();
  std::vector<double> Du(u.size()), Z(u.size(), 0.0);
  fourier::derivative_rings(u.data(), Du.data(), nr, nt, 1);
  y.assign(u.size(), 0.0);
  for (int f = 0; f + 1 < nr; ++f) {
    const int a = f * nt, b = (f + 1) * nt;
    for (int j = 0; j < nt; ++j) {
      const double cc = face_c_[f * nt + j];
      const double t = (u[b + j] - u[a + j]) / h - cc * 0.5 * (Du[a + j] + Du[b + j]);
      const double T = face_w_[f * nt + j] * t;
      y[a + j] -= T / h;
      y[b + j] += T / h;
      Z[a + j] += 0.5 * cc * T;
      Z[b + j] += 0.5 * cc * T;
    }
  }
  for (size_t k = 0; k < u.size(); ++k) Z[k] -= node_w_[k] * Du[k];
  std::vector<double> DZ(u.size());
  fourier::derivative_rings(Z.data(), DZ.data(), nr, nt, 1);
  for (size_t k = 0; k < u.size(); ++k) y[k] += DZ[k];
  for (int i = 0; i < nr; ++i) {
    double N = 0;
    for (int j = 0; j < nt; ++j) N += (j % 2 ? -1.0 : 1.0) * u[i * nt + j];
    N /= nt;
    for (int j = 0; j < nt; ++j) y[i * nt + j] += nyq_[i] * N * (j % 2 ? -1.0 : 1.0);
  }
}

double EllipticWorkspace::bilinear(const std::vector<double>& u, const std::vector<double>& v) const {
  std::vector<double> Av;
  apply(v, Av);
  return dotv(u, Av);
}

ScalarField EllipticWorkspace::poisson_dirichlet(const ScalarField& f, const BoundaryFn& g) const {
  const auto& c = *chart_;
  const int nt = c.n_theta(), n = c.size();
  const int ob = c.boundary_ring() * nt;
  std::vector<double> ghat(n, 0.0), Ag;
  for (int j = 0; j < nt; ++j) ghat[ob + j] = g.v[j];
  apply(ghat, Ag);
  std::vector<double> b(n, 0.0);
  for (int k = 0; k < ob; ++k) b[k] = -c.weight(k) * f.v[k] - Ag[k];
  auto A = [&](const std::vector<double>& x, std::vector<double>& y) {
    apply(x, y);
    for (int k = ob; k < n; ++k) y[k] = 0.0;
  };
  auto M = [&](const std::vector<double>& r, std::vector<double>& z) { pre_dir_.apply(r, z); };
  std::vector<double> x;
  pcg(A, M, b, x, tol_, max_iter_);
  for (int j = 0; j < nt; ++j) x[ob + j] = g.v[j];
  return ScalarField(chart_, std::move(x));
}

ScalarField EllipticWorkspace::harmonic_extension(const BoundaryFn& g) const {
  return poisson_dirichlet(ScalarField(chart_, 0.0), g);
}

namespace {
void remove_mean(std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= double(v.size());
  for (double& x : v) x -= m;
}
}  // namespace

ScalarField EllipticWorkspace::poisson_neumann(const ScalarField& f, const BoundaryFn& psi) const {
  const auto& c = *chart_;
  const int nt = c.n_theta(), n = c.size();
  const int ob = c.boundary_ring() * nt;
  std::vector<double> b(n);
  for (int k = 0; k < n; ++k) b[k] = -c.weight(k) * f.v[k];
  for (int j = 0; j < nt; ++j) b[ob + j] += c.dtheta() * c.arc(j) * psi.v[j];
  auto A = [&](const std::vector<double>& x, std::vector<double>& y) { apply(x, y); };
  auto M = [&](const std::vector<double>& r, std::vector<double>& z) { pre_neu_.apply(r, z); };
  std::vector<double> x;
  pcg(A, M, b, x, tol_, max_iter_, remove_mean);
  ScalarField u(chart_, std::move(x));
  const double mean = integrate(u) / c.area();
  for (double& v : u.v) v -= mean;
  return u;
}

BoundaryFn EllipticWorkspace::normal_flux(const ScalarField& u, const ScalarField* f) const {
  const auto& c = *chart_;
  const int nt = c.n_theta();
  const int ob = c.boundary_ring() * nt;
  std::vector<double> Au;
  apply(u.v, Au);
  BoundaryFn g(nt);
  for (int j = 0; j < nt; ++j) {
    double r = Au[ob + j];
    if (f) r += c.weight(ob + j) * f->v[ob + j];
    g.v[j] = r / (c.dtheta() * c.arc(j));
  }
  return g;
}

BoundaryFn EllipticWorkspace::normal_trace_grad(const ScalarField& u) const {
  const auto& c = *chart_;
  const int nt = c.n_theta();
  const int ob = c.boundary_ring() * nt;
  ScalarField ur = d_rho(u);
  std::vector<double> ut(nt);
  fourier::derivative(&u.v[ob], ut.data(), nt, 1);
  BoundaryFn g(nt);
  for (int j = 0; j < nt; ++j) {
    const double R = c.R(j), s = c.arc(j);
    g.v[j] = (s / (R * R)) * ur.v[ob + j] - (c.Rp(j) / (R * s)) * ut[j];
  }
  return g;
}

BoundaryFn EllipticWorkspace::normal_of_inverse_laplacian(const ScalarField& h) const {
  ScalarField w = poisson_dirichlet(h, BoundaryFn(chart_->n_theta()));
  return normal_flux(w, &h);
}

BoundaryFn EllipticWorkspace::dtn(const BoundaryFn& g) const { return normal_flux(harmonic_extension(g)); }

BoundaryFn EllipticWorkspace::dtn_inverse(const BoundaryFn& f) const {
  const auto& c = *chart_;
  const double L = c.boundary_length();
  const double mean = integrate_boundary(f, c) / L;
  const double scale = boundary_l2_norm(f, c) / std::sqrt(L);
  if (std::abs(mean) > 1e-8 * scale)
    throw Error(ErrorKind::NonZeroMean, "boundary data has surface mean " + std::to_string(mean));
  ScalarField u = poisson_neumann(ScalarField(chart_, 0.0), f);
  return surface_mean_free(trace(u), c);
}

BoundaryFn EllipticWorkspace::dtn_power(const BoundaryFn& g, int m) const {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "negative DtN power");
  BoundaryFn r = g;
  for (int k = 0; k < m; ++k) r = dtn(r);
  return r;
}

}  // namespace fbmhd
