#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "xrsim/analytics.hpp"
#include "xrsim/runner.hpp"

using namespace xrsim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("closed-form sweep writes one verifiable row per grid point") {
  TempDir dir("xrsim_test_analytics");
  Scenario sc = make_scenario("", {"analytics.second_tx_rho=0.2",
                                   "analytics.xi_cbg=0.97"});
  runner::run_analytics(sc, dir.str());

  auto rows = lines_of(slurp(dir.path / "analytics.csv"));
  REQUIRE(!rows.empty());
  CHECK(rows[0] == "p_tb,m,p_cbg,r_first,r_second,rreg_percent");
  // Four group counts over p = 0.01..0.30 in 0.01 steps.
  REQUIRE(rows.size() == 1 + 4 * 30);

  analytics::SecondTxError f = analytics::second_tx_residual(0.2);
  analytics::EfficiencyInputs eff{0.97, 1.0};
  for (size_t i = 1; i < rows.size(); ++i) {
    auto cols = fields_of(rows[i]);
    REQUIRE(cols.size() == 6);
    double p = std::stod(cols[0]);
    int m = std::stoi(cols[1]);
    CHECK(std::abs(std::stod(cols[2]) - analytics::cbg_error_from_tb(p, m)) <=
          1e-6);
    CHECK(std::abs(std::stod(cols[3]) - analytics::expected_retx_first(p, m)) <=
          1e-6);
    CHECK(std::abs(std::stod(cols[4]) -
                   analytics::expected_retx_second(p, m, f)) <= 1e-6);
    CHECK(std::abs(std::stod(cols[5]) -
                   analytics::rreg_percent(p, p, m, eff, f)) <= 1e-5);
  }

  std::string meta = slurp(dir.path / "run_meta.ini");
  CHECK(meta.find("# generated by xrsim 0.1.0") != std::string::npos);
  CHECK(meta.find("# subcommand: analytics") != std::string::npos);
  CHECK(meta.find("second_tx_rho = 0.2") != std::string::npos);
}

TEST_CASE("simulation outputs are byte-stable and echo their inputs") {
  TempDir a("xrsim_test_sim_a");
  TempDir b("xrsim_test_sim_b");
  TempDir c("xrsim_test_sim_c");
  std::vector<std::string> overrides{
      "sim.cells=1",          "sim.ues_per_cell=2",
      "sim.horizon_ms=500",   "sim.seed=11",
      "la.policy=eolla_alg2", "output.offset_trace=true",
      "output.packet_trace=true", "output.harq_trace=true"};
  Scenario sc = make_scenario("", overrides);

  sim::RunResult rr = runner::run_simulate(sc, a.str());
  runner::run_simulate(sc, b.str());
  for (const char* name :
       {"kpi.csv", "ecdf_mcs.csv", "ecdf_prb.csv", "ecdf_delay.csv",
        "offset_trace.csv", "packet_trace.csv", "harq_trace.csv",
        "run_meta.ini"}) {
    CAPTURE(name);
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  }

  // The echoed configuration reproduces the run from scratch.
  Scenario echoed = load_scenario((a.path / "run_meta.ini").string());
  runner::run_simulate(echoed, c.str());
  CHECK(slurp(a.path / "kpi.csv") == slurp(c.path / "kpi.csv"));
  CHECK(slurp(a.path / "ecdf_prb.csv") == slurp(c.path / "ecdf_prb.csv"));
  CHECK(slurp(a.path / "run_meta.ini") == slurp(c.path / "run_meta.ini"));

  // kpi.csv mirrors the returned records.
  auto rows = lines_of(slurp(a.path / "kpi.csv"));
  CHECK(rows[0] == "ue_id,packets,on_time,late,lost,satisfied");
  REQUIRE(rows.size() == 1 + rr.ues.size());
  for (size_t i = 0; i < rr.ues.size(); ++i) {
    auto cols = fields_of(rows[i + 1]);
    REQUIRE(cols.size() == 6);
    const sim::UeResult& u = rr.ues[i];
    CHECK(std::stoul(cols[0]) == u.ue_id);
    CHECK(std::stoull(cols[1]) == u.kpi.packets_total);
    CHECK(std::stoull(cols[2]) == u.kpi.packets_on_time);
    CHECK(std::stoull(cols[3]) == u.kpi.packets_late);
    CHECK(std::stoull(cols[4]) == u.kpi.packets_lost);
    CHECK(cols[5] == (u.is_satisfied ? "1" : "0"));
  }

  // Distribution files are headed correctly and end at probability one.
  auto mcs_rows = lines_of(slurp(a.path / "ecdf_mcs.csv"));
  CHECK(mcs_rows[0] == "mcs_index,cum_fraction");
  if (mcs_rows.size() > 1) {
    CHECK(mcs_rows.back().substr(mcs_rows.back().find(',')) == ",1.00000000");
  }
  auto prb_rows = lines_of(slurp(a.path / "ecdf_prb.csv"));
  CHECK(prb_rows[0] == "prb_load,cum_fraction");
  auto delay_rows = lines_of(slurp(a.path / "ecdf_delay.csv"));
  CHECK(delay_rows[0] == "delay_ms,cum_fraction");

  std::string meta = slurp(a.path / "run_meta.ini");
  CHECK(meta.find("# subcommand: simulate") != std::string::npos);
  CHECK(meta.find("derived.converged_second_tx_residual_tber") !=
        std::string::npos);
}

TEST_CASE("meta comments carry the policy's converged operating point") {
  TempDir dir("xrsim_test_meta");
  Scenario trad = make_scenario("");
  runner::run_analytics(trad, dir.str());
  std::string meta = slurp(dir.path / "run_meta.ini");
  CHECK(meta.find("# derived.converged_first_tx_tber = 0.100000000") !=
        std::string::npos);

  Scenario a1 = make_scenario("", {"la.policy=eolla_alg1"});
  runner::run_analytics(a1, dir.str());
  meta = slurp(dir.path / "run_meta.ini");
  CHECK(meta.find("# derived.converged_first_tx_cbger = 0.295774648") !=
        std::string::npos);
}

TEST_CASE("capacity sweep writes one row per load level") {
  TempDir dir("xrsim_test_capacity");
  Scenario sc = make_scenario(
      "", {"sim.cells=1", "sim.horizon_ms=300", "capacity.ue_counts=1,2",
           "capacity.runs_per_count=2", "capacity.threads=2"});
  sim::CapacityResult cr = runner::run_capacity(sc, dir.str());
  auto rows = lines_of(slurp(dir.path / "capacity.csv"));
  CHECK(rows[0] == "ues_per_cell,satisfied_fraction,stderr");
  REQUIRE(rows.size() == 3);
  CHECK(fields_of(rows[1])[0] == "1");
  CHECK(fields_of(rows[2])[0] == "2");
  std::string meta = slurp(dir.path / "run_meta.ini");
  CHECK(meta.find("# subcommand: capacity") != std::string::npos);
  CHECK(meta.find("# derived.capacity_ues_per_cell = " +
                  std::to_string(cr.capacity)) != std::string::npos);
}

TEST_CASE("a failed run leaves no partial output behind") {
  TempDir dir("xrsim_test_guard");
  fs::create_directories(dir.path / "run_meta.ini");  // blocks the meta write
  Scenario sc = make_scenario("");
  CHECK_THROWS(runner::run_analytics(sc, dir.str()));
  CHECK_FALSE(fs::exists(dir.path / "analytics.csv"));
}

TEST_CASE("an unusable output directory reports an error") {
  TempDir dir("xrsim_test_botched");
  fs::create_directories(dir.path);
  std::ofstream(dir.path / "occupied").put('x');
  Scenario sc = make_scenario("");
  CHECK_THROWS(runner::run_analytics(sc, (dir.path / "occupied").string()));
}
