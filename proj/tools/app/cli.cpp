#include "cli.hpp"

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "nldp/error.hpp"
#include "nldp/presets.hpp"
#include "run.hpp"

namespace nldp::app {

namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ConfigParse:
    case Errc::UnknownPreset:
    case Errc::UnknownSuite:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App cli{"Monotone finite-volume solver and diagnostics for nonlocal convection-diffusion"};
  cli.require_subcommand(0, 1);

  std::string config_path;
  std::optional<std::string> problem, measure, mode, flux, tail, out;
  std::optional<double> dx, dt, r, Z, T;
  std::optional<int> cadence;
  std::optional<std::uint64_t> seed;
  bool auto_cfl = false, energy = false;

  cli.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  cli.add_option("--problem", problem, "problem preset name or JSON file");
  cli.add_option("--measure", measure, "measure preset name or JSON file");
  cli.add_option("--dx", dx, "cell size");
  auto* dt_opt = cli.add_option("--dt", dt, "fixed time step");
  cli.add_flag("--auto-cfl", auto_cfl, "largest monotone step (default)")->excludes(dt_opt);
  cli.add_option("--r", r, "stencil splitting radius (default dx)");
  cli.add_option("--Z", Z, "stencil truncation radius");
  cli.add_option("--T", T, "time horizon (default from the problem)");
  cli.add_option("--flux", flux, "numerical flux")->check(CLI::IsMember({"eo", "lf"}));
  cli.add_option("--tail", tail, "far-field policy beyond Z")->check(CLI::IsMember({"halo_mean", "drop"}));
  cli.add_option("--mode", mode, "run mode")->check(CLI::IsMember({"solve", "picard", "vanishing", "stability", "gallery"}));
  cli.add_option("--out", out, "artifact directory");
  cli.add_option("--cadence", cadence, "write every n-th step to trajectory.csv");
  cli.add_option("--seed", seed, "seed for randomized checks");
  cli.add_flag("--energy", energy, "add the two-grid energy inequality check to solve runs");

  auto* suite = cli.add_subcommand("suite", "run an aggregated check suite");
  std::string suite_name;
  suite->add_option("name", suite_name, "appendix, apriori or chains")->required();
  suite->fallthrough();

  auto* list = cli.add_subcommand("list", "print preset names");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::cout << "problems:";
      for (const auto& n : problem_preset_names()) std::cout << ' ' << n;
      std::cout << "\nmeasures:";
      for (const auto& n : measure_preset_names()) std::cout << ' ' << n;
      std::cout << '\n';
      return 0;
    }

    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config_file(config_path);
    if (seed) cfg.seed = *seed;

    if (suite->parsed()) {
      const Report rep = run_suite(suite_name, cfg.seed);
      print_summary(std::cout, "suite " + suite_name, rep);
      const std::string dir = out.value_or("nldp_suite_" + suite_name);
      nlohmann::json config{{"suite", suite_name}, {"seed", cfg.seed}};
      write_report(std::filesystem::path(dir) / "report.json", rep, config);
      return rep.pass() ? 0 : 1;
    }

    if (problem) cfg.problem = *problem;
    if (measure) cfg.measure = *measure;
    if (mode) cfg.mode = parse_mode(*mode);
    if (out) cfg.out_dir = *out;
    if (dx) cfg.scheme.dx = *dx;
    if (dt) {
      cfg.scheme.dt = *dt;
      cfg.scheme.auto_cfl = false;
    }
    if (auto_cfl) cfg.scheme.auto_cfl = true;
    if (r) cfg.scheme.r = *r;
    if (Z) cfg.scheme.Z = *Z;
    if (T) cfg.scheme.T = *T;
    if (flux) cfg.scheme.flux = *flux == "lf" ? NumericalFlux::LaxFriedrichs : NumericalFlux::EngquistOsher;
    if (cadence) cfg.scheme.cadence = *cadence;
    if (tail) cfg.scheme.tail = *tail == "drop" ? TailPolicy::Drop : TailPolicy::HaloMean;
    if (energy) cfg.toggles.energy = true;
    require(cfg.scheme.dx > 0.0, Errc::ConfigParse, "dx must be positive");
    require(cfg.scheme.cadence >= 1, Errc::ConfigParse, "cadence must be at least 1");

    const Report rep = run(cfg);
    const std::string title =
        cfg.mode == Mode::Gallery ? std::string("gallery") : to_string(cfg.mode) + " " + cfg.problem + " / " + cfg.measure;
    print_summary(std::cout, title, rep);
    return rep.pass() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace nldp::app
