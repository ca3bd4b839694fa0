#include "fbmhd/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "fbmhd/error.hpp"
#include "fbmhd/oracle.hpp"

namespace fbmhd::io {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void put_doubles(std::ostream& os, const std::vector<double>& v) {
  for (double d : v) {
    auto u = std::bit_cast<std::uint64_t>(d);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
    char b[8];
    std::memcpy(b, &u, 8);
    os.write(b, 8);
  }
}

std::vector<double> get_doubles(std::istream& is, size_t n, const char* what) {
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) {
    char b[8];
    if (!is.read(b, 8)) throw Error(ErrorKind::Parse, std::string("truncated array ") + what);
    std::uint64_t u;
    std::memcpy(&u, b, 8);
    if constexpr (std::endian::native == std::endian::big) u = __builtin_bswap64(u);
    v[i] = std::bit_cast<double>(u);
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad number for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d)) throw Error(ErrorKind::Parse, "expected an integer for " + key);
  return int(d);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw Error(ErrorKind::Parse, "expected true/false for " + key);
}

std::string header_value(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Parse, "missing header line " + key);
  const auto sp = line.find(' ');
  if (sp == std::string::npos || line.substr(0, sp) != key)
    throw Error(ErrorKind::Parse, "expected header '" + key + "', got '" + line + "'");
  return line.substr(sp + 1);
}

// Key table shared by the parser and the serializer, in output order.
struct Key {
  const char* name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

const std::vector<Key>& keys() {
  static const std::vector<Key> k = [] {
    std::vector<Key> t;
    auto dbl = [&](const char* n, double RunConfig::*m) {
      t.push_back({n, [=](RunConfig& c, const std::string& v) { c.*m = to_double(n, v); },
                   [=](const RunConfig& c) { return fmt(c.*m); }});
    };
    auto sdbl = [&](const char* n, double StepConfig::*m) {
      t.push_back({n, [=](RunConfig& c, const std::string& v) { c.step.*m = to_double(n, v); },
                   [=](const RunConfig& c) { return fmt(c.step.*m); }});
    };
    auto sint = [&](const char* n, int StepConfig::*m) {
      t.push_back({n, [=](RunConfig& c, const std::string& v) { c.step.*m = to_int(n, v); },
                   [=](const RunConfig& c) { return std::to_string(c.step.*m); }});
    };
    auto sbool = [&](const char* n, bool StepConfig::*m) {
      t.push_back({n, [=](RunConfig& c, const std::string& v) { c.step.*m = to_bool(n, v); },
                   [=](const RunConfig& c) { return std::string(c.step.*m ? "true" : "false"); }});
    };
    auto str = [&](const char* n, std::string RunConfig::*m) {
      t.push_back({n, [=](RunConfig& c, const std::string& v) { c.*m = v; },
                   [=](const RunConfig& c) { return c.*m; }});
    };
    sdbl("epsilon", &StepConfig::epsilon);
    sint("n_r", &StepConfig::n_r);
    sint("n_theta", &StepConfig::n_theta);
    sint("M", &StepConfig::M);
    sdbl("tol_elliptic", &StepConfig::tol_elliptic);
    sdbl("tol_div", &StepConfig::tol_div);
    sdbl("tol_tangency", &StepConfig::tol_tangency);
    sdbl("c0_min", &StepConfig::c0_min);
    sdbl("collar_delta", &StepConfig::collar_delta);
    sbool("step1_surface", &StepConfig::step1_surface);
    sbool("step2_mollify", &StepConfig::step2_mollify);
    sbool("step3_fieldline", &StepConfig::step3_fieldline);
    sdbl("heat_margin", &StepConfig::heat_margin);
    sdbl("mollify_shift", &StepConfig::mollify_shift);
    sdbl("split_scale_cells", &StepConfig::split_scale_cells);
    sint("max_fp_iters", &StepConfig::max_fp_iters);
    sdbl("tol_fp", &StepConfig::tol_fp);
    sbool("compute_energy", &StepConfig::compute_energy);
    dbl("T", &RunConfig::T);
    t.push_back({"snapshot_every",
                 [](RunConfig& c, const std::string& v) { c.snapshot_every = to_int("snapshot_every", v); },
                 [](const RunConfig& c) { return std::to_string(c.snapshot_every); }});
    str("scenario", &RunConfig::scenario);
    str("state", &RunConfig::state_path);
    dbl("c", &RunConfig::c);
    dbl("amp", &RunConfig::amp);
    t.push_back({"mode", [](RunConfig& c, const std::string& v) { c.mode = to_int("mode", v); },
                 [](const RunConfig& c) { return std::to_string(c.mode); }});
    dbl("strain", &RunConfig::strain);
    t.push_back({"eps_list",
                 [](RunConfig& c, const std::string& v) {
                   c.eps_list.clear();
                   std::stringstream ss(v);
                   std::string item;
                   while (std::getline(ss, item, ','))
                     if (!trim(item).empty()) c.eps_list.push_back(to_double("eps_list", trim(item)));
                 },
                 [](const RunConfig& c) { return join(c.eps_list); }});
    str("out_dir", &RunConfig::out_dir);
    t.push_back({"svg", [](RunConfig& c, const std::string& v) { c.svg = to_bool("svg", v); },
                 [](const RunConfig& c) { return std::string(c.svg ? "true" : "false"); }});
    t.push_back({"timing", [](RunConfig& c, const std::string& v) { c.timing = to_bool("timing", v); },
                 [](const RunConfig& c) { return std::string(c.timing ? "true" : "false"); }});
    return t;
  }();
  return k;
}

}  // namespace

StateData state_data(const MhdState& s, double epsilon) {
  StateData d;
  const auto& c = *s.chart;
  d.n_r = c.n_r();
  d.n_theta = c.n_theta();
  d.M = s.surface().eta.M();
  d.collar_delta = s.surface().collar_delta;
  d.epsilon = epsilon;
  for (const auto& z : s.surface().eta.coeffs()) {
    d.eta.push_back(z.real());
    d.eta.push_back(z.imag());
  }
  d.vx = s.v.x;
  d.vy = s.v.y;
  d.Bx = s.B.x;
  d.By = s.B.y;
  return d;
}

MhdState to_state(const StateData& d, StateConfig cfg) {
  std::vector<BoundarySeries::cplx> co(2 * d.M + 1);
  for (int k = 0; k < 2 * d.M + 1; ++k) co[k] = {d.eta[2 * k], d.eta[2 * k + 1]};
  auto chart = make_chart(build_surface(BoundarySeries(d.M, co), d.collar_delta), d.n_r, d.n_theta);
  cfg.reproject = false;
  return assemble(chart, VectorField(chart, d.vx, d.vy), VectorField(chart, d.Bx, d.By), cfg);
}

void write_state(std::ostream& os, const StateData& d) {
  os << kMagic;
  os << "n_r " << d.n_r << "\n";
  os << "n_theta " << d.n_theta << "\n";
  os << "M " << d.M << "\n";
  os << "collar_delta " << fmt(d.collar_delta) << "\n";
  os << "epsilon " << fmt(d.epsilon) << "\n";
  os << "data\n";
  put_doubles(os, d.eta);
  put_doubles(os, d.vx);
  put_doubles(os, d.vy);
  put_doubles(os, d.Bx);
  put_doubles(os, d.By);
}

StateData read_state(std::istream& is) {
  std::string magic(std::strlen(kMagic), '\0');
  if (!is.read(magic.data(), std::streamsize(magic.size())) || magic != kMagic)
    throw Error(ErrorKind::Parse, "not a state file (bad magic)");
  StateData d;
  d.n_r = to_int("n_r", header_value(is, "n_r"));
  d.n_theta = to_int("n_theta", header_value(is, "n_theta"));
  d.M = to_int("M", header_value(is, "M"));
  d.collar_delta = to_double("collar_delta", header_value(is, "collar_delta"));
  d.epsilon = to_double("epsilon", header_value(is, "epsilon"));
  std::string line;
  if (!std::getline(is, line) || line != "data") throw Error(ErrorKind::Parse, "missing data marker");
  if (d.n_r < 4 || d.n_theta < 4 || d.M < 0 || d.n_r > 1 << 14 || d.n_theta > 1 << 15 || d.M > 1 << 14)
    throw Error(ErrorKind::Parse, "implausible header counts");
  const size_t n = size_t(d.n_r) * d.n_theta;
  d.eta = get_doubles(is, 2 * (2 * size_t(d.M) + 1), "eta");
  d.vx = get_doubles(is, n, "v");
  d.vy = get_doubles(is, n, "v");
  d.Bx = get_doubles(is, n, "B");
  d.By = get_doubles(is, n, "B");
  if (is.peek() != std::char_traits<char>::eof()) throw Error(ErrorKind::Parse, "trailing bytes after the arrays");
  return d;
}

void save_state(const std::string& path, const MhdState& s, double epsilon) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  write_state(os, state_data(s, epsilon));
  if (!os) throw Error(ErrorKind::Io, "write failed: " + path);
}

StateData load_state_data(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path);
  return read_state(is);
}

MhdState load_state(const std::string& path, StateConfig cfg) { return to_state(load_state_data(path), cfg); }

RunConfig parse_run_config(const std::string& text) {
  RunConfig c;
  std::map<std::string, const Key*> table;
  for (const auto& k : keys()) table[k.name] = &k;
  std::stringstream ss(text);
  std::string line;
  int no = 0;
  while (std::getline(ss, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, "line " + std::to_string(no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    auto it = table.find(key);
    if (it == table.end()) throw Error(ErrorKind::Parse, "line " + std::to_string(no) + ": unknown key '" + key + "'");
    it->second->set(c, value);
  }
  c.step.validate();
  if (!(c.T >= 0)) throw Error(ErrorKind::Parse, "T must be >= 0");
  return c;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_text(path)); }

std::string serialize(const RunConfig& c) {
  std::string s;
  for (const auto& k : keys()) s += std::string(k.name) + "=" + k.get(c) + "\n";
  return s;
}

MhdState initial_state(const RunConfig& c) {
  StateConfig sc = c.step.state_config();
  sc.reproject = true;
  // the run itself reports a Taylor violation as a halt
  sc.check_taylor = false;
  const int nr = c.step.n_r, nt = c.step.n_theta;
  const double cd = c.step.collar_delta;
  if (c.scenario == "rotor") return oracle::build(oracle::equilibrium_rotor(c.c, cd), nr, nt, sc);
  if (c.scenario == "perturbed_rotor") return oracle::build(oracle::perturbed_rotor(c.c, c.amp, c.mode, cd), nr, nt, sc);
  if (c.scenario == "rigid_rotation") return oracle::build(oracle::taylor_violating_rotation(c.c, cd), nr, nt, sc);
  if (c.scenario == "strain") return oracle::build(oracle::irrotational_strain(c.strain, cd), nr, nt, sc);
  if (c.scenario == "file") {
    if (c.state_path.empty()) throw Error(ErrorKind::Parse, "scenario=file needs state=PATH");
    return load_state(c.state_path, sc);
  }
  throw Error(ErrorKind::Parse, "unknown scenario '" + c.scenario + "'");
}

std::string run_csv(const RunLog& log, bool timing) {
  std::string s;
  const auto& cols = csv_columns();
  for (size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  if (timing) s += ",wall_time";
  s += "\n";
  for (size_t i = 0; i < log.rows.size(); ++i) {
    const auto& r = log.rows[i];
    s += fmt(r.t) + "," + fmt(r.E_total) + "," + fmt(r.E3_total) + "," + fmt(r.a_min) + "," + fmt(r.tangency_res) + "," +
         fmt(r.div_res_v) + "," + fmt(r.div_res_B) + "," + fmt(r.boundary_sup_disp) + ",";
    if (i + 1 == log.rows.size()) s += halt_name(log.halt);
    if (timing) s += "," + fmt(r.wall_time);
    s += "\n";
  }
  return s;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string s = "eps_a,eps_b,D_total,D_interior_plus,D_interior_minus,D_boundary_A,D_boundary_Ah,order\n";
  for (const auto& r : rows) {
    s += fmt(r.eps_a) + "," + fmt(r.eps_b) + "," + fmt(r.d.total) + "," + fmt(r.d.interior_plus) + "," +
         fmt(r.d.interior_minus) + "," + fmt(r.d.boundary_A) + "," + fmt(r.d.boundary_Ah) + ",";
    if (std::isfinite(r.order)) s += fmt(r.order);
    s += "\n";
  }
  return s;
}

std::string boundary_svg(const DomainChart& a, const DomainChart& b) {
  const double size = 400, scale = 150, mid = size / 2;
  auto poly = [&](const DomainChart& c, const char* colour) {
    std::string p = "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
    const int n = 4 * c.n_theta();
    for (int q = 0; q <= n; ++q) {
      const double t = 2 * std::numbers::pi * q / n;
      const double r = c.surface().eta(t) + 1.0;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3f,%.3f ", mid + scale * r * std::cos(t), mid - scale * r * std::sin(t));
      p += buf;
    }
    return p + "\"/>\n";
  };
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  s += "<line x1=\"0\" y1=\"200\" x2=\"400\" y2=\"200\" stroke=\"#999\"/>\n";
  s += "<line x1=\"200\" y1=\"0\" x2=\"200\" y2=\"400\" stroke=\"#999\"/>\n";
  s += poly(a, "#1f77b4");
  s += poly(b, "#d62728");
  return s + "</svg>\n";
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream ss(text);
  std::string line;
  bool first = true;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) throw Error(ErrorKind::Parse, "CSV row width differs from the header");
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  os << text;
  if (!os) throw Error(ErrorKind::Io, "write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace fbmhd::io
