#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fbmhd/field.hpp"

namespace fbmhd {

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0;
};

using LinearOp = std::function<void(const std::vector<double>&, std::vector<double>&)>;

// Preconditioned conjugate gradients; throws SolverDiverged past max_iter.
// `project` (optional) removes kernel components from iterates and residuals.
SolveStats pcg(const LinearOp& A, const LinearOp& Minv, const std::vector<double>& b, std::vector<double>& x,
               double tol, int max_iter, const std::function<void(std::vector<double>&)>& project = {});

// Restarted GMRES, right preconditioned, so the reported residual is the true one.
SolveStats gmres(const LinearOp& A, const LinearOp& Minv, const std::vector<double>& b, std::vector<double>& x,
                 double tol, int max_iter, int restart = 40);

// Exact finite-volume Laplacian of the unit disk on this grid, inverted mode by
// mode in theta with a tridiagonal solve in rho.
class DiskPreconditioner {
 public:
  DiskPreconditioner(const DomainChart& c, bool dirichlet);
  void apply(const std::vector<double>& r, std::vector<double>& z) const;

 private:
  int n_r_, n_t_, m_;  // m_ = number of radial unknowns
  bool dirichlet_;
  std::vector<double> lower_, diag_, upper_;  // per mode, m_ entries each
};

// Symmetric finite-volume discretization of -Delta (times the control-volume
// measure) on a DomainChart. The outermost ring is the boundary.
class EllipticWorkspace {
 public:
  explicit EllipticWorkspace(ChartPtr chart, double tol = 1e-10, int max_iter = 2000);

  const ChartPtr& chart() const { return chart_; }
  double tol() const { return tol_; }
  int max_iterations() const { return max_iter_; }

  // y = A u over all nodes (natural boundary form).
  void apply(const std::vector<double>& u, std::vector<double>& y) const;
  double bilinear(const std::vector<double>& u, const std::vector<double>& v) const;

  ScalarField poisson_dirichlet(const ScalarField& f, const BoundaryFn& g) const;
  ScalarField harmonic_extension(const BoundaryFn& g) const;
  // Delta u = f, d_n u = psi; returns the solution with zero area mean.
  ScalarField poisson_neumann(const ScalarField& f, const BoundaryFn& psi) const;

  // Conservative normal derivative of a solution of Delta u = f.
  BoundaryFn normal_flux(const ScalarField& u, const ScalarField* f = nullptr) const;
  // One-sided finite-difference normal derivative.
  BoundaryFn normal_trace_grad(const ScalarField& u) const;
  // d_n Delta^{-1} h with zero Dirichlet data.
  BoundaryFn normal_of_inverse_laplacian(const ScalarField& h) const;

  BoundaryFn dtn(const BoundaryFn& g) const;
  BoundaryFn dtn_inverse(const BoundaryFn& f) const;
  BoundaryFn dtn_power(const BoundaryFn& g, int m) const;

 private:
  ChartPtr chart_;
  double tol_;
  int max_iter_;
  std::vector<double> face_c_, face_w_;  // per face (f, j): q/(rho_f p), h dtheta rho_f p
  std::vector<double> node_w_;           // per node: beta dtheta/(rho p)
  std::vector<double> nyq_;              // per ring
  DiskPreconditioner pre_dir_, pre_neu_;
};

// Statistics of the most recent pcg call on the calling thread.
SolveStats last_solve_stats();

}  // namespace fbmhd
