#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fbmhd/state.hpp"
#include "fbmhd/stepper.hpp"

namespace fbmhd::io {

inline constexpr const char* kMagic = "FBMHD1\n";

// Raw file contents; nothing is derived until assemble.
struct StateData {
  int n_r = 0, n_theta = 0, M = 0;
  double collar_delta = 0.3, epsilon = 0;
  std::vector<double> eta;  // 2M+1 complex coefficients (modes -M..M) interleaved re, im
  std::vector<double> vx, vy, Bx, By;
};

StateData state_data(const MhdState& s, double epsilon = 0.0);
// Rebuilds the chart and assembles without re-projection, so the stored arrays
// come back bit for bit. Constraint and Taylor checks follow cfg.
MhdState to_state(const StateData& d, StateConfig cfg = {});

void write_state(std::ostream& os, const StateData& d);
StateData read_state(std::istream& is);
void save_state(const std::string& path, const MhdState& s, double epsilon = 0.0);
StateData load_state_data(const std::string& path);
MhdState load_state(const std::string& path, StateConfig cfg = {});

// key=value run configuration. Unknown keys are rejected; '#' starts a comment.
struct RunConfig {
  StepConfig step;
  double T = 0.0;
  int snapshot_every = 0;
  std::string scenario = "rotor";  // rotor, perturbed_rotor, rigid_rotation, strain, file
  std::string state_path;          // scenario = file
  double c = 1.0, amp = 0.05, strain = 0.1;
  int mode = 2;
  std::vector<double> eps_list;  // converge
  std::string out_dir = ".";
  bool svg = false;
  bool timing = false;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);
std::string serialize(const RunConfig& c);
MhdState initial_state(const RunConfig& c);

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {"t",          "E_total",   "E3_total",  "a_min",
                                                "tangency_res", "div_res_v", "div_res_B", "boundary_sup_disp",
                                                "halt_reason"};
  return cols;
}

// halt_reason is filled on the last row only; wall_time is appended as an
// extra column only when timing is requested.
std::string run_csv(const RunLog& log, bool timing = false);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
// Two boundary polylines (initial and final) plus axes.
std::string boundary_svg(const DomainChart& initial, const DomainChart& final_chart);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(const std::string& text);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace fbmhd::io
