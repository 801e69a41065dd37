#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "nldp/levy_measure.hpp"
#include "nldp/problem.hpp"
#include "nldp/scheme.hpp"

namespace nldp::app {

enum class Mode { Solve, Picard, Vanishing, Stability, Gallery };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

/// Which diagnostics a solve run evaluates; each enabled check can fail the run.
struct Toggles {
  bool max_principle = true;
  bool contraction = true;
  bool balance = true;
  bool energy = false;  ///< needs the extension's derivatives
  bool moduli = true;
};

/// Everything a run needs. Problem and measure references are preset names or
/// paths to JSON files; the loaders resolve them.
struct RunConfig {
  std::string problem = "burgers_riemann";
  std::string measure = "none";
  SchemeConfig scheme;
  Mode mode = Mode::Solve;
  Toggles toggles;
  std::string out_dir = "nldp_out";
  std::uint64_t seed = 0x5eed;

  int picard_max_iter = 40;
  double picard_tol = 1e-12;
  double alpha = 1.0;                          ///< vanishing viscosity
  std::vector<int> chain{1, 4, 16, 64};        ///< vanishing viscosity n list
  std::vector<int> truncations{4, 8, 16, 32};  ///< stability chain r = 1/n
  int reference_truncation = 64;
};

/// Fills a config from JSON; unknown keys and wrong types raise ConfigParse.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

/// Preset name, or a JSON file {"base": preset, "flux": {...}, "diffusion": {...}, "T": ...}.
ProblemSpec load_problem(const std::string& ref);
/// Preset name, or a JSON file {"kind": "fractional" | "atomic" | "preset", ...}.
LevyMeasure load_measure(const std::string& ref, int dim);

ScalarFn scalar_fn_from_json(const nlohmann::json& j);

}  // namespace nldp::app
