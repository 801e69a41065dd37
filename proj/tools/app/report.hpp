#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "nldp/diagnostics.hpp"
#include "nldp/scheme.hpp"

namespace nldp::app {

/// Named checks plus free-form metrics. The `timing` object is the only part
/// that varies between identical runs.
struct Report {
  std::vector<Check> checks;
  nlohmann::json metrics = nlohmann::json::object();
  nlohmann::json timing = nlohmann::json::object();

  void add(Check c) { checks.push_back(std::move(c)); }
  bool pass() const;
  nlohmann::json to_json() const;
};

Check make_check(std::string name, bool pass, double worst_slack,
                 std::vector<std::pair<std::string, double>> params = {});

/// Opens a file for writing or raises IoFailure.
std::ofstream open_output(const std::filesystem::path& path);

void write_report(const std::filesystem::path& path, const Report& r, const nlohmann::json& config);
/// t,cell,u for every cadence-th step and the final one, interior cells only.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
/// kind,h_or_tau,value with h and tau in physical units.
void write_moduli_csv(const std::filesystem::path& path, const ModuliTable& m, double dx, double dt);
void write_gaps_csv(const std::filesystem::path& path, const std::vector<double>& gaps);

/// Prints `name  PASS|FAIL  slack` lines.
void print_summary(std::ostream& os, const std::string& title, const Report& r);

}  // namespace nldp::app
