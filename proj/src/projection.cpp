#include "fbmhd/projection.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "fbmhd/calculus.hpp"
#include "fbmhd/elliptic.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/fourier.hpp"

namespace fbmhd {

namespace {

using cplx = std::complex<double>;

// L = div grad = curl perp_grad on the unit disk, one dense radial block per
// theta mode, restricted to interior rings.
class DiskStreamSolver {
 public:
  explicit DiskStreamSolver(const DomainChart& c) : n_r_(c.n_r()), n_t_(c.n_theta()), m_(c.n_r() - 1) {
    const auto& D = RadialStencil::get(n_r_, c.h(), 1);
    Eigen::MatrixXd Dm = Eigen::MatrixXd::Zero(n_r_, n_r_);
    for (int i = 0; i < n_r_; ++i)
      for (size_t l = 0; l < D.weights(i).size(); ++l) Dm(i, D.start(i) + int(l)) = D.weights(i)[l];
    Eigen::VectorXd rho(n_r_);
    for (int i = 0; i < n_r_; ++i) rho(i) = c.rho(i);
    Eigen::MatrixXd base = rho.cwiseInverse().asDiagonal() * Dm * rho.asDiagonal() * Dm;
    for (int k = 0; k <= n_t_ / 2; ++k) {
      Eigen::MatrixXd K = base.topLeftCorner(m_, m_);
      const double kk = k < n_t_ / 2 ? double(k) * k : 0.0;
      for (int i = 0; i < m_; ++i) K(i, i) -= kk / (rho(i) * rho(i));
      lu_.emplace_back(K);
    }
  }

  void apply(const std::vector<double>& r, std::vector<double>& z) const {
    const int modes = n_t_ / 2 + 1;
    std::vector<cplx> spec(size_t(m_) * modes);
    for (int i = 0; i < m_; ++i) fourier::forward(&r[i * n_t_], &spec[size_t(i) * modes], n_t_);
    Eigen::VectorXd re(m_), im(m_);
    for (int k = 0; k < modes; ++k) {
      for (int i = 0; i < m_; ++i) {
        re(i) = spec[size_t(i) * modes + k].real();
        im(i) = spec[size_t(i) * modes + k].imag();
      }
      Eigen::VectorXd a = lu_[k].solve(re), b = lu_[k].solve(im);
      for (int i = 0; i < m_; ++i) spec[size_t(i) * modes + k] = cplx(a(i), b(i)) / double(n_t_);
    }
    z.assign(r.size(), 0.0);
    for (int i = 0; i < m_; ++i) fourier::backward(&spec[size_t(i) * modes], &z[i * n_t_], n_t_);
  }

 private:
  int n_r_, n_t_, m_;
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
};

const DiskStreamSolver& disk_solver(const DomainChart& c) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::unique_ptr<DiskStreamSolver>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{c.n_r(), c.n_theta()}];
  if (!slot) slot = std::make_unique<DiskStreamSolver>(c);
  return *slot;
}

// Boundary stream values whose tangential derivative reproduces the normal
// flux density of v, minus its mean.
std::vector<double> boundary_stream(const VectorField& v) {
  const auto& c = *v.chart;
  const int nt = c.n_theta();
  const BoundaryFn vn = normal_component(v);
  std::vector<double> f(nt);
  double flux = 0, len = 0;
  for (int j = 0; j < nt; ++j) {
    f[j] = c.arc(j) * vn[j];
    flux += f[j];
    len += c.arc(j);
  }
  for (int j = 0; j < nt; ++j) f[j] -= flux / len * c.arc(j);
  // B.n = -D_theta(psi) / |x_theta|
  std::vector<cplx> spec(nt / 2 + 1);
  fourier::forward(f.data(), spec.data(), nt);
  spec[0] = 0.0;
  spec[nt / 2] = 0.0;
  for (int k = 1; k < nt / 2; ++k) spec[k] = -spec[k] / (cplx(0, k) * double(nt));
  std::vector<double> g(nt);
  fourier::backward(spec.data(), g.data(), nt);
  return g;
}

}  // namespace

ScalarField stream_function(const VectorField& v, bool tangent, const ProjectionOptions& opt) {
  const ChartPtr& cp = v.chart;
  const auto& c = *cp;
  const int ob = c.boundary_ring() * c.n_theta();

  ScalarField lift(cp);
  if (!tangent) {
    auto g = boundary_stream(v);
    std::copy(g.begin(), g.end(), lift.v.begin() + ob);
  }
  ScalarField rhs = curl(v) - div(grad(lift));
  // rows carry the Jacobian, which keeps roundoff from the 1/rho^2 terms near
  // the origin out of the residual
  std::vector<double> b(ob);
  for (int k = 0; k < ob; ++k) b[k] = c.jacobian(k) * rhs.v[k];

  ScalarField work(cp);
  auto A = [&](const std::vector<double>& x, std::vector<double>& y) {
    std::copy(x.begin(), x.end(), work.v.begin());
    std::fill(work.v.begin() + ob, work.v.end(), 0.0);
    ScalarField Lx = div(grad(work));
    y.resize(ob);
    for (int k = 0; k < ob; ++k) y[k] = c.jacobian(k) * Lx.v[k];
  };
  const auto& P = disk_solver(c);
  std::vector<double> scaled(ob);
  auto M = [&](const std::vector<double>& r, std::vector<double>& z) {
    for (int k = 0; k < ob; ++k) scaled[k] = r[k] / c.jacobian(k);
    P.apply(scaled, z);
  };
  std::vector<double> x;
  gmres(A, M, b, x, opt.tol, opt.max_iter);

  ScalarField psi = lift;
  for (int k = 0; k < ob; ++k) psi.v[k] = x[k];
  return psi;
}

VectorField div_free_projection(const VectorField& v, const ProjectionOptions& opt) {
  VectorField out = perp_grad(stream_function(v, false, opt));
  out.div_residual = divergence_residual(out);
  return out;
}

VectorField rot_projection(const VectorField& v, const ProjectionOptions& opt) {
  VectorField out = perp_grad(stream_function(v, true, opt));
  out.div_residual = divergence_residual(out);
  return out;
}

HodgeSplit hodge_split(const VectorField& v, const ProjectionOptions& opt) {
  VectorField vd = div_free_projection(v, opt);
  HodgeSplit s;
  s.rot = rot_projection(vd, opt);
  s.irrot = vd - s.rot;
  s.irrot.div_residual = divergence_residual(s.irrot);
  return s;
}

double divergence_residual(const VectorField& v) { return l2_norm(div(v)); }

double tangency_residual(const VectorField& v) { return boundary_l2_norm(normal_component(v), *v.chart); }

}  // namespace fbmhd
