#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fbmhd/functionals.hpp"
#include "fbmhd/state.hpp"

namespace fbmhd {

struct StepConfig {
  double epsilon = 1e-2;
  // Resolution of the chart built for the new boundary; M = 0 means n_theta / 4.
  int n_r = 32, n_theta = 64, M = 0;
  double tol_elliptic = 1e-10, tol_div = 1e-8, tol_tangency = 1e-8, c0_min = 1e-3;
  double collar_delta = 0.3;
  bool check_taylor = true;  // off only for tests of degenerate states

  bool step1_surface = true, step2_mollify = true, step3_fieldline = true;
  double heat_margin = 0.1;       // overshoot margin of the shrink after heat flow
  double mollify_shift = 0.0;     // C in x - C eps^3 nu
  double split_scale_cells = 3.0;  // frequency split of step 3, in radial cells
  int max_fp_iters = 20;
  double tol_fp = 1e-10;

  int inverse_map_iters = 30;
  double tol_inverse_map = 1e-14;
  bool compute_energy = true;  // E^3 before/after every step

  int modes() const { return M > 0 ? M : n_theta / 4; }
  StateConfig state_config() const;
  // Throws InvalidArgument on inconsistent values.
  void validate() const;
};

struct StepReport {
  double t = 0;  // time after the step
  double epsilon = 0;
  EnergyReport E3_before, E3_after;
  double energy_before = 0, energy_after = 0;
  double a_min_before = 0, a_min_after = 0;
  double tangency_residual = 0, div_residual_v = 0, div_residual_B = 0;
  double boundary_displacement_sup = 0;
  // || v1 - [v0 - eps (v0.grad v0 - B0.grad B0 + grad P0)] ||_inf on the common domain
  double contract_residual = 0;
  double contract_K = 0;  // contract_residual / eps^2
  int fp_iterations = 0;
  double wall_time = 0;
};

enum class HaltReason { None, TaylorSign, CollarExit, NotStarShaped, SolverFailure, ConstraintViolation, Other };
const char* halt_name(HaltReason r);

struct RunRow {
  double t = 0, E_total = 0, E3_total = 0, a_min = 0;
  double tangency_res = 0, div_res_v = 0, div_res_B = 0;
  double boundary_sup_disp = 0;  // relative to the initial boundary
  double max_vorticity = 0;      // max |curl v|
  double wall_time = 0;
};

struct RunLog {
  std::vector<RunRow> rows;
  std::vector<StepReport> steps;
  std::vector<std::pair<double, MhdState>> snapshots;
  MhdState final_state;
  HaltReason halt = HaltReason::None;
  std::string halt_message;
};

MhdState regularize_state(const MhdState& s, const StepConfig& cfg);
MhdState euler_transport(const MhdState& reg, const StepConfig& cfg);
std::pair<MhdState, StepReport> step(const MhdState& s, const StepConfig& cfg);

// Boundary of the transported domain x + eps v(x), re-graphed over the unit
// circle by Newton iteration along rays. Returns eta samples at the chart's
// theta nodes. Throws NotStarShaped.
std::vector<double> transported_boundary(const DomainChart& c, const VectorField& v, double eps);

// Steps of size epsilon (the last one shortened to land on T). Halts are
// recorded, not thrown. snapshot_every = 0 keeps only the final state.
RunLog run(const MhdState& s0, double T, const StepConfig& cfg, int snapshot_every = 0);

RunRow row_of(const MhdState& s, double t, bool with_energy);

struct ConvergenceRow {
  double eps_a = 0, eps_b = 0;
  DistanceReport d;
  // from sqrt(D), which is the L2-level quantity; NaN on the first row
  double order = 0;
};

// Pairwise distances between the final states of runs at consecutive entries
// of eps_list. Throws if a run halts.
std::vector<ConvergenceRow> self_convergence(const MhdState& s0, double T, const std::vector<double>& eps_list,
                                             const StepConfig& cfg);

}  // namespace fbmhd
