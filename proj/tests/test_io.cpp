#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "fbmhd/error.hpp"
#include "fbmhd/io.hpp"
#include "fbmhd/oracle.hpp"

using namespace fbmhd;

namespace {

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

MhdState perturbed(int n_r = 24, int n_t = 48) {
  // non-round boundary so eta has nonzero coefficients
  auto r = oracle::perturbed_rotor(1.0, 0.05, 2);
  r.surface = build_surface(BoundarySeries::cosine(2, 0.05, 4), 0.3);
  return oracle::build(r, n_r, n_t);
}

ErrorKind kind_of(const std::string& bytes) {
  std::istringstream is(bytes);
  try {
    io::read_state(is);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(StateFile, RoundTripIsBitExact) {
  const auto s = perturbed();
  const auto d = io::state_data(s, 0.01);
  std::stringstream ss;
  io::write_state(ss, d);
  const auto e = io::read_state(ss);
  EXPECT_EQ(e.n_r, d.n_r);
  EXPECT_EQ(e.n_theta, d.n_theta);
  EXPECT_EQ(e.M, d.M);
  EXPECT_EQ(e.collar_delta, d.collar_delta);
  EXPECT_EQ(e.epsilon, d.epsilon);
  EXPECT_TRUE(bits_equal(e.eta, d.eta));
  EXPECT_TRUE(bits_equal(e.vx, d.vx));
  EXPECT_TRUE(bits_equal(e.vy, d.vy));
  EXPECT_TRUE(bits_equal(e.Bx, d.Bx));
  EXPECT_TRUE(bits_equal(e.By, d.By));

  // and through a full assemble, with no re-projection
  const auto s2 = io::to_state(e);
  EXPECT_TRUE(bits_equal(s2.v.x, s.v.x));
  EXPECT_TRUE(bits_equal(s2.B.y, s.B.y));
  const auto d2 = io::state_data(s2, 0.01);
  std::stringstream a, b;
  io::write_state(a, d);
  io::write_state(b, d2);
  EXPECT_EQ(a.str(), b.str());
}

TEST(StateFile, LayoutIsLittleEndian) {
  io::StateData d;
  d.n_r = 4;
  d.n_theta = 4;
  d.M = 0;
  d.eta = {1.0, 0.0};
  d.vx = d.vy = d.Bx = d.By = std::vector<double>(16, 0.0);
  std::stringstream ss;
  io::write_state(ss, d);
  const std::string s = ss.str();
  const std::string head = "FBMHD1\nn_r 4\nn_theta 4\nM 0\ncollar_delta 0.29999999999999999\nepsilon 0\ndata\n";
  ASSERT_EQ(s.substr(0, head.size()), head);
  // 1.0 = 0x3FF0000000000000, lowest byte first
  const unsigned char one[8] = {0, 0, 0, 0, 0, 0, 0xF0, 0x3F};
  EXPECT_EQ(std::memcmp(s.data() + head.size(), one, 8), 0);
  EXPECT_EQ(s.size(), head.size() + 8 * (2 + 4 * 16));
}

TEST(StateFile, Rejections) {
  std::stringstream ss;
  io::write_state(ss, io::state_data(perturbed(16, 32)));
  const std::string good = ss.str();
  EXPECT_EQ(kind_of(good.substr(0, good.size() - 3)), ErrorKind::Parse);
  EXPECT_EQ(kind_of(good.substr(0, 20)), ErrorKind::Parse);
  EXPECT_EQ(kind_of("FBMHD2\n" + good.substr(7)), ErrorKind::Parse);
  EXPECT_EQ(kind_of(good + "x"), ErrorKind::Parse);
  EXPECT_EQ(kind_of(""), ErrorKind::Parse);
  try {
    io::load_state_data("/nonexistent/dir/x.fbmhd");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

TEST(RunConfigFile, ParseSerializeIdempotent) {
  const auto c = io::parse_run_config(
      "# comment\n"
      "epsilon = 0.005\n"
      "n_r=40\n  n_theta=80  # trailing\n"
      "scenario=perturbed_rotor\namp=0.058\nmode=3\n"
      "T=0.25\nsnapshot_every=5\n"
      "eps_list=0.01, 0.005,0.0025\n"
      "step3_fieldline=false\nsvg=true\n");
  EXPECT_EQ(c.step.epsilon, 0.005);
  EXPECT_EQ(c.step.n_r, 40);
  EXPECT_EQ(c.step.n_theta, 80);
  EXPECT_EQ(c.mode, 3);
  EXPECT_FALSE(c.step.step3_fieldline);
  EXPECT_TRUE(c.svg);
  ASSERT_EQ(c.eps_list.size(), 3u);
  EXPECT_EQ(c.eps_list[2], 0.0025);

  const std::string once = io::serialize(c);
  const auto c2 = io::parse_run_config(once);
  EXPECT_EQ(io::serialize(c2), once);
  EXPECT_EQ(c2.amp, 0.058);
  EXPECT_EQ(c2.step.tol_elliptic, c.step.tol_elliptic);
}

TEST(RunConfigFile, Rejections) {
  auto kind = [](const std::string& text) {
    try {
      io::parse_run_config(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  EXPECT_EQ(kind("no_such_key=1\n"), ErrorKind::Parse);
  EXPECT_EQ(kind("epsilon\n"), ErrorKind::Parse);
  EXPECT_EQ(kind("n_r=12.5\n"), ErrorKind::Parse);
  EXPECT_EQ(kind("epsilon=abc\n"), ErrorKind::Parse);
  EXPECT_EQ(kind("svg=maybe\n"), ErrorKind::Parse);
  EXPECT_EQ(kind("epsilon=-1\n"), ErrorKind::InvalidArgument);
}

TEST(RunCsv, SchemaAndDeterminism) {
  io::RunConfig rc;
  rc.step.n_r = 24;
  rc.step.n_theta = 48;
  rc.scenario = "perturbed_rotor";
  rc.T = 0.03;
  const auto s0 = io::initial_state(rc);
  const auto log = run(s0, rc.T, rc.step);
  const std::string csv = io::run_csv(log);
  const auto t = io::parse_csv(csv);
  EXPECT_EQ(t.header, io::csv_columns());
  ASSERT_EQ(t.rows.size(), 4u);
  for (size_t i = 0; i + 1 < t.rows.size(); ++i) EXPECT_EQ(t.rows[i].back(), "");
  EXPECT_EQ(t.rows.back().back(), "none");
  EXPECT_NEAR(std::stod(t.rows.back()[0]), 0.03, 1e-15);
  // values survive the text form exactly
  EXPECT_EQ(std::stod(t.rows[1][1]), log.rows[1].E_total);

  const auto log2 = run(io::initial_state(rc), rc.T, rc.step);
  EXPECT_EQ(io::run_csv(log2), csv);

  const auto timed = io::parse_csv(io::run_csv(log, true));
  EXPECT_EQ(timed.header.back(), "wall_time");
  EXPECT_EQ(timed.header.size(), io::csv_columns().size() + 1);
}

TEST(RunCsv, HaltReasonOnLastRow) {
  io::RunConfig rc;
  rc.step.n_r = 24;
  rc.step.n_theta = 48;
  rc.scenario = "rigid_rotation";
  rc.T = 0.1;
  const auto log = run(io::initial_state(rc), rc.T, rc.step);
  const auto t = io::parse_csv(io::run_csv(log));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].back(), "taylor_sign");
}

TEST(Svg, TwoPolylines) {
  const auto s = perturbed(16, 32);
  const std::string svg = io::boundary_svg(*s.chart, *s.chart);
  size_t n = 0;
  for (size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++n;
  EXPECT_EQ(n, 2u);
  EXPECT_NE(svg.find("<line"), std::string::npos);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}
