#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "fbmhd/chart.hpp"
#include "fbmhd/elliptic.hpp"
#include "fbmhd/error.hpp"
#include "fbmhd/functionals.hpp"
#include "fbmhd/io.hpp"
#include "fbmhd/oracle.hpp"
#include "fbmhd/parallel.hpp"
#include "fbmhd/stepper.hpp"

namespace fs = std::filesystem;
using namespace fbmhd;

namespace {

// Exit codes shared by all commands.
constexpr int kOk = 0, kIoError = 1, kConstraint = 2, kHalted = 3;

bool is_constraint(ErrorKind k) {
  switch (k) {
    case ErrorKind::TaylorSignViolation:
    case ErrorKind::TangencyViolation:
    case ErrorKind::DivergenceViolation:
    case ErrorKind::CollarViolation:
    case ErrorKind::NotStarShaped:
      return true;
    default:
      return false;
  }
}

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.10g", v);
  return b;
}

io::RunConfig config_or_default(const std::string& path) {
  return path.empty() ? io::RunConfig{} : io::load_run_config(path);
}

void ensure_dir(const std::string& d) {
  std::error_code ec;
  fs::create_directories(d, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + d + ": " + ec.message());
}

void print_energy(const EnergyReport& e) {
  const char* sign[2] = {"+", "-"};
  for (int s = 0; s < 2; ++s) {
    std::printf("E3[%s] 1+L2            %s\n", sign[s], num(1 + e.one_plus_L2[s]).c_str());
    std::printf("E3[%s] omega_H2        %s\n", sign[s], num(e.omega_H2[s]).c_str());
    std::printf("E3[%s] gradB_omega     %s\n", sign[s], num(e.gradB_omega_H32_proxy[s]).c_str());
    std::printf("E3[%s] a_N2a           %s\n", sign[s], num(e.a_N2a_L2Gamma[s]).c_str());
    std::printf("E3[%s] gradH_N_G       %s\n", sign[s], num(e.gradH_N_G_L2[s]).c_str());
    std::printf("E3[%s] gradH_N_gradBa  %s\n", sign[s], num(e.gradH_N_gradBa_L2[s]).c_str());
    std::printf("E3[%s] inv_a_N_gradBG  %s\n", sign[s], num(e.inv_a_N_gradBG_L2Gamma[s]).c_str());
  }
  std::printf("E3 total              %s\n", num(e.total).c_str());
}

int cmd_validate(const std::string& path, const std::string& config) {
  io::StateData d;
  StateConfig sc;
  try {
    sc = config_or_default(config).step.state_config();
    d = io::load_state_data(path);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kIoError;
  }
  try {
    sc.check_taylor = true;
    const MhdState s = io::to_state(d, sc);
    const auto g = diagnostics(s);
    std::printf("grid          %d x %d, M = %d\n", d.n_r, d.n_theta, d.M);
    std::printf("div_res_v     %s\n", num(g.div_residual_v).c_str());
    std::printf("div_res_B     %s\n", num(g.div_residual_B).c_str());
    std::printf("tangency_res  %s\n", num(g.tangency_residual).c_str());
    std::printf("a_min         %s\n", num(g.a_min).c_str());
    std::printf("collar_margin %s\n", num(g.collar_margin).c_str());
    std::printf("E             %s\n", num(g.total_energy).c_str());
    std::printf("E3            %s\n", num(higher_energy(s).total).c_str());
    std::printf("valid\n");
    return kOk;
  } catch (const Error& e) {
    if (is_constraint(e.kind())) {
      std::printf("invalid: %s\n", kind_name(e.kind()));
      std::fprintf(stderr, "%s\n", e.what());
      return kConstraint;
    }
    std::fprintf(stderr, "%s\n", e.what());
    return kIoError;
  }
}

int cmd_energy(const std::string& path, const std::string& config) {
  StateConfig sc = config_or_default(config).step.state_config();
  sc.check_taylor = false;
  const MhdState s = io::load_state(path, sc);
  std::printf("E                     %s\n", num(diagnostics(s).total_energy).c_str());
  print_energy(higher_energy(s));
  return kOk;
}

int cmd_distance(const std::string& a, const std::string& b, const std::string& config) {
  MhdState x, y;
  try {
    StateConfig sc = config_or_default(config).step.state_config();
    sc.check_taylor = false;
    x = io::load_state(a, sc);
    y = io::load_state(b, sc);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Parse ? kIoError : kConstraint;
  }
  try {
    const auto d = distance(x, y);
    std::printf("interior_plus,interior_minus,boundary_A,boundary_Ah,total\n");
    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g\n", d.interior_plus, d.interior_minus, d.boundary_A, d.boundary_Ah,
                d.total);
    return kOk;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return e.kind() == ErrorKind::CollarViolation ? kConstraint : kIoError;
  }
}

int cmd_step(const std::string& path, const std::string& config, const std::string& out) {
  const auto rc = config_or_default(config);
  StateConfig sc = rc.step.state_config();
  const MhdState s = io::load_state(path, sc);
  const auto [s1, rep] = step(s, rc.step);
  std::printf("t                  %s\n", num(rep.t).c_str());
  std::printf("E3 before/after    %s %s\n", num(rep.E3_before.total).c_str(), num(rep.E3_after.total).c_str());
  std::printf("E before/after     %s %s\n", num(rep.energy_before).c_str(), num(rep.energy_after).c_str());
  std::printf("a_min before/after %s %s\n", num(rep.a_min_before).c_str(), num(rep.a_min_after).c_str());
  std::printf("tangency_res       %s\n", num(rep.tangency_residual).c_str());
  std::printf("div_res_v/B        %s %s\n", num(rep.div_residual_v).c_str(), num(rep.div_residual_B).c_str());
  std::printf("boundary_disp      %s\n", num(rep.boundary_displacement_sup).c_str());
  std::printf("contract_K         %s\n", num(rep.contract_K).c_str());
  ensure_dir(out);
  const std::string dst = (fs::path(out) / "step.fbmhd").string();
  io::save_state(dst, s1, rc.step.epsilon);
  std::printf("wrote %s\n", dst.c_str());
  return kOk;
}

int cmd_run(const std::string& config, const std::string& out_flag, bool svg_flag, bool timing_flag) {
  io::RunConfig rc;
  MhdState s0;
  try {
    rc = io::load_run_config(config);
    s0 = io::initial_state(rc);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kIoError;
  }
  const std::string out = out_flag.empty() ? rc.out_dir : out_flag;
  const bool svg = svg_flag || rc.svg, timing = timing_flag || rc.timing;
  ensure_dir(out);

  const RunLog log = run(s0, rc.T, rc.step, rc.snapshot_every);
  io::write_text((fs::path(out) / "run.csv").string(), io::run_csv(log, timing));
  for (size_t i = 0; i < log.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%04zu.fbmhd", i);
    io::save_state((fs::path(out) / name).string(), log.snapshots[i].second, rc.step.epsilon);
  }
  if (log.final_state.chart) {
    io::save_state((fs::path(out) / "final.fbmhd").string(), log.final_state, rc.step.epsilon);
    if (svg)
      io::write_text((fs::path(out) / "boundary.svg").string(), io::boundary_svg(*s0.chart, *log.final_state.chart));
  }
  if (log.halt != HaltReason::None) {
    std::fprintf(stderr, "halted: %s (%s)\n", halt_name(log.halt), log.halt_message.c_str());
    return kHalted;
  }
  return kOk;
}

int cmd_converge(const std::string& config, const std::string& out_flag) {
  io::RunConfig rc;
  MhdState s0;
  try {
    rc = io::load_run_config(config);
    s0 = io::initial_state(rc);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kIoError;
  }
  const std::string out = out_flag.empty() ? rc.out_dir : out_flag;
  ensure_dir(out);
  const std::string csv = (fs::path(out) / "convergence.csv").string();
  if (rc.eps_list.empty()) rc.eps_list = {rc.step.epsilon};

  // Runs one epsilon at a time so a failure still leaves the rows computed so far.
  std::vector<ConvergenceRow> rows;
  std::vector<MhdState> finals;
  for (double e : rc.eps_list) {
    StepConfig c = rc.step;
    c.epsilon = e;
    c.compute_energy = false;
    try {
      auto log = run(s0, rc.T, c);
      if (log.halt != HaltReason::None) throw Error(ErrorKind::SolverDiverged, log.halt_message);
      finals.push_back(std::move(log.final_state));
      if (finals.size() >= 2) {
        ConvergenceRow r;
        r.eps_a = rc.eps_list[finals.size() - 2];
        r.eps_b = e;
        r.d = distance(finals[finals.size() - 2], finals.back());
        r.order = NAN;
        if (!rows.empty())
          r.order = std::log(std::sqrt(rows.back().d.total / r.d.total)) / std::log(rows.back().eps_a / r.eps_a);
        rows.push_back(r);
      }
    } catch (const Error& err) {
      io::write_text(csv, io::convergence_csv(rows));
      std::fprintf(stderr, "eps = %g: %s\n", e, err.what());
      return kHalted;
    }
    io::write_text(csv, io::convergence_csv(rows));
  }
  std::fputs(io::convergence_csv(rows).c_str(), stdout);
  return kOk;
}

int cmd_dtn_test(int n, int kmax, double tol) {
  const auto t0 = std::chrono::steady_clock::now();
  auto chart = make_chart(build_surface(BoundarySeries(0), 0.3), n, n);
  EllipticWorkspace ws(chart);
  bool ok = true;
  for (int k = 1; k <= kmax; ++k) {
    auto g = sample_boundary(*chart, [k](double t) { return std::cos(k * t); });
    auto r = ws.dtn(g);
    double err = 0;
    for (int j = 0; j < chart->n_theta(); ++j) err = std::max(err, std::abs(r.v[j] - k * g.v[j]));
    err /= k;
    ok = ok && err <= tol;
    std::printf("k=%d err/k=%.3e %s\n", k, err, err <= tol ? "ok" : "FAIL");
  }
  std::printf("time %.2f s\n", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return ok ? kOk : kConstraint;
}

int cmd_make(const std::string& scenario, const std::string& config, const std::string& dst, double c, double amp,
             int mode, double strain) {
  auto rc = config_or_default(config);
  rc.scenario = scenario;
  rc.c = c;
  rc.amp = amp;
  rc.mode = mode;
  rc.strain = strain;
  io::save_state(dst, io::initial_state(rc), rc.step.epsilon);
  std::printf("wrote %s\n", dst.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  init_threads_from_env();
  CLI::App app{"fbmhd: free-boundary incompressible MHD in two dimensions"};
  app.require_subcommand(1);

  std::string config, out, path_a, path_b;
  bool svg = false, timing = false;

  auto* validate = app.add_subcommand("validate", "check a state file's constraints");
  validate->add_option("state", path_a)->required();
  validate->add_option("--config", config);

  auto* energy = app.add_subcommand("energy", "print E and the E3 components of a state");
  energy->add_option("state", path_a)->required();
  energy->add_option("--config", config);

  auto* dist = app.add_subcommand("distance", "distance functional between two states");
  dist->add_option("a", path_a)->required();
  dist->add_option("b", path_b)->required();
  dist->add_option("--config", config);

  auto* stp = app.add_subcommand("step", "advance a state by one step");
  stp->add_option("state", path_a)->required();
  stp->add_option("--config", config);
  std::string step_out = ".";
  stp->add_option("--out", step_out);

  auto* rn = app.add_subcommand("run", "run to time T and write run.csv");
  rn->add_option("--config", config)->required();
  rn->add_option("--out", out);
  rn->add_flag("--svg", svg);
  rn->add_flag("--timing", timing);

  auto* conv = app.add_subcommand("converge", "epsilon sweep and pairwise distances");
  conv->add_option("--config", config)->required();
  conv->add_option("--out", out);

  int dtn_n = 128, dtn_k = 8;
  double dtn_tol = 1e-3;
  auto* dtn = app.add_subcommand("dtn-test", "DtN spectrum on the unit disk");
  dtn->add_option("--n", dtn_n)->default_val(128);
  dtn->add_option("--kmax", dtn_k)->default_val(8);
  dtn->add_option("--tol", dtn_tol)->default_val(1e-3);

  std::string scenario = "rotor";
  double c = 1.0, amp = 0.05, strain = 0.1;
  int mode = 2;
  auto* make = app.add_subcommand("make-equilibrium", "write an initial state file");
  make->add_option("out_file", path_a)->required();
  make->add_option("--scenario", scenario)
      ->check(CLI::IsMember({"rotor", "perturbed_rotor", "rigid_rotation", "strain"}));
  make->add_option("--c", c);
  make->add_option("--amp", amp);
  make->add_option("--mode", mode);
  make->add_option("--strain", strain);
  make->add_option("--config", config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kIoError;
  }

  try {
    if (*validate) return cmd_validate(path_a, config);
    if (*energy) return cmd_energy(path_a, config);
    if (*dist) return cmd_distance(path_a, path_b, config);
    if (*stp) return cmd_step(path_a, config, step_out);
    if (*rn) return cmd_run(config, out, svg, timing);
    if (*conv) return cmd_converge(config, out);
    if (*dtn) return cmd_dtn_test(dtn_n, dtn_k, dtn_tol);
    if (*make) return cmd_make(scenario, config, path_a, c, amp, mode, strain);
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Parse ? kIoError : kHalted;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  }
  return kIoError;
}
