#include "report.hpp"

#include <iomanip>
#include <ostream>

#include "nldp/error.hpp"

namespace nldp::app {

using nlohmann::json;

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

json Report::to_json() const {
  json checks_json = json::object();
  for (const auto& c : checks) {
    json params = json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    checks_json[c.name] = {{"pass", c.pass}, {"worst_slack", c.worst_slack}, {"params", params}};
  }
  return json{{"pass", pass()}, {"checks", checks_json}, {"metrics", metrics}, {"timing", timing}};
}

Check make_check(std::string name, bool pass, double worst_slack, std::vector<std::pair<std::string, double>> params) {
  Check c;
  c.name = std::move(name);
  c.pass = pass;
  c.worst_slack = worst_slack;
  c.params = std::move(params);
  return c;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream os(path);
  require(os.good(), Errc::IoFailure, "cannot write '" + path.string() + "'");
  os << std::setprecision(17);
  return os;
}

void write_report(const std::filesystem::path& path, const Report& r, const json& config) {
  json j = r.to_json();
  j["config"] = config;
  auto os = open_output(path);
  os << j.dump(2) << '\n';
  require(os.good(), Errc::IoFailure, "write failed for '" + path.string() + "'");
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
  auto os = open_output(path);
  os << "t,cell,u\n";
  const std::size_t last = traj.u.size() - 1;
  const std::size_t cadence = static_cast<std::size_t>(std::max(traj.cadence, 1));
  for (std::size_t n = 0; n < traj.u.size(); ++n) {
    if (n % cadence != 0 && n != last) continue;
    for (std::size_t k = 0; k < traj.grid.size(); ++k)
      if (traj.interior[k]) os << traj.times[n] << ',' << k << ',' << traj.u[n][k] << '\n';
  }
  require(os.good(), Errc::IoFailure, "write failed for '" + path.string() + "'");
}

void write_moduli_csv(const std::filesystem::path& path, const ModuliTable& m, double dx, double dt) {
  auto os = open_output(path);
  os << "kind,h_or_tau,value\n";
  for (std::size_t i = 0; i < m.space.size(); ++i) os << "space," << m.shifts_cells[i] * dx << ',' << m.space[i] << '\n';
  for (std::size_t i = 0; i < m.time.size(); ++i) os << "time," << m.shifts_steps[i] * dt << ',' << m.time[i] << '\n';
  require(os.good(), Errc::IoFailure, "write failed for '" + path.string() + "'");
}

void write_gaps_csv(const std::filesystem::path& path, const std::vector<double>& gaps) {
  auto os = open_output(path);
  os << "k,gap\n";
  for (std::size_t k = 0; k < gaps.size(); ++k) os << k << ',' << gaps[k] << '\n';
  require(os.good(), Errc::IoFailure, "write failed for '" + path.string() + "'");
}

void print_summary(std::ostream& os, const std::string& title, const Report& r) {
  os << title << '\n';
  for (const auto& c : r.checks)
    os << "  " << std::left << std::setw(52) << c.name << (c.pass ? "PASS" : "FAIL") << "  slack " << std::scientific
       << std::setprecision(3) << c.worst_slack << std::defaultfloat << '\n';
  os << (r.pass() ? "all checks passed" : "some checks failed") << '\n';
}

}  // namespace nldp::app
