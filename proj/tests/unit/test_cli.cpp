#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int call(std::vector<std::string> args) {
  args.insert(args.begin(), "nldp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return nldp::app::cli_main(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nldp_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

TEST(Cli, SolveWritesReportAndTrajectory) {
  const fs::path out = scratch("solve");
  EXPECT_EQ(call({"--problem", "burgers_bump", "--measure", "atomic", "--dx", "0.03125", "--Z", "0.25", "--out",
                  out.string()}),
            0);
  EXPECT_EQ(first_line(out / "trajectory.csv"), "t,cell,u");
  EXPECT_EQ(first_line(out / "moduli.csv"), "kind,h_or_tau,value");
  const auto r = read_json(out / "report.json");
  EXPECT_TRUE(r.at("pass").get<bool>());
  EXPECT_TRUE(r.at("checks").contains("max_principle"));
  EXPECT_TRUE(r.at("timing").contains("wall_seconds"));
}

TEST(Cli, ReportIsDeterministicApartFromTiming) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const auto& out : {a, b})
    ASSERT_EQ(call({"--problem", "stefan_riemann", "--measure", "fractional_trunc", "--dx", "0.03125", "--Z", "0.25",
                    "--out", out.string()}),
              0);
  auto ra = read_json(a / "report.json"), rb = read_json(b / "report.json");
  ra.erase("timing");
  rb.erase("timing");
  ra["config"].erase("out_dir");
  rb["config"].erase("out_dir");
  ra["metrics"].erase("timing");
  rb["metrics"].erase("timing");
  EXPECT_EQ(ra, rb);
}

TEST(Cli, GalleryModeWritesTheTable) {
  const fs::path out = scratch("gallery");
  EXPECT_EQ(call({"--mode", "gallery", "--out", out.string()}), 0);
  EXPECT_EQ(first_line(out / "gallery.csv"), "measure,quantity,argument,value,bound,pass,enforced");
}

TEST(Cli, ConfigurationErrorsExitWithTwo) {
  EXPECT_EQ(call({"--problem", "no_such_problem", "--out", scratch("bad1").string()}), 2);
  EXPECT_EQ(call({"--dx", "not-a-number"}), 2);
  EXPECT_EQ(call({"--flux", "godunov"}), 2);
  EXPECT_EQ(call({"--dt", "0.01", "--auto-cfl"}), 2);
  EXPECT_EQ(call({"suite", "no_such_suite", "--out", scratch("bad2").string()}), 2);

  const fs::path cfg = fs::temp_directory_path() / "nldp_cli_test_bad.json";
  std::ofstream(cfg) << "{\"scheme\": {\"dx\": 0.1, \"typo\": 1}}";
  EXPECT_EQ(call({"--config", cfg.string()}), 2);
  std::ofstream(cfg) << "{not json";
  EXPECT_EQ(call({"--config", cfg.string()}), 2);
}

TEST(Cli, CflViolationIsARuntimeError) {
  EXPECT_EQ(call({"--problem", "burgers_bump", "--dx", "0.03125", "--dt", "0.5", "--out", scratch("cfl").string()}), 3);
}

TEST(Cli, JsonConfigIsApplied) {
  const fs::path out = scratch("json");
  const fs::path cfg = fs::temp_directory_path() / "nldp_cli_test_ok.json";
  std::ofstream(cfg) << R"({"problem": "linear_bump", "measure": "none", "scheme": {"dx": 0.0625, "T": 0.25}})";
  ASSERT_EQ(call({"--config", cfg.string(), "--out", out.string()}), 0);
  const auto r = read_json(out / "report.json");
  EXPECT_EQ(r.at("config").at("problem"), "linear_bump");
  EXPECT_DOUBLE_EQ(r.at("config").at("scheme").at("dx").get<double>(), 0.0625);
}

TEST(Cli, ListAndHelpSucceed) {
  EXPECT_EQ(call({"list"}), 0);
  EXPECT_EQ(call({"--help"}), 0);
}

}  // namespace
