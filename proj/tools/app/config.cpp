#include "config.hpp"

#include <fstream>
#include <set>

#include "nldp/error.hpp"
#include "nldp/presets.hpp"

namespace nldp::app {

using nlohmann::json;

namespace {

bool looks_like_file(const std::string& ref) {
  return ref.find('/') != std::string::npos || (ref.size() > 5 && ref.substr(ref.size() - 5) == ".json");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::IoFailure, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::ConfigParse, path + ": " + e.what());
  }
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  require(j.is_object(), Errc::ConfigParse, where + " must be an object");
  for (const auto& [k, v] : j.items())
    require(allowed.count(k) > 0, Errc::ConfigParse, "unknown key '" + k + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

NumericalFlux parse_flux(const std::string& s) {
  if (s == "eo") return NumericalFlux::EngquistOsher;
  if (s == "lf") return NumericalFlux::LaxFriedrichs;
  fail(Errc::ConfigParse, "flux must be 'eo' or 'lf', got '" + s + "'");
}

TailPolicy parse_tail(const std::string& s) {
  if (s == "halo_mean") return TailPolicy::HaloMean;
  if (s == "drop") return TailPolicy::Drop;
  fail(Errc::ConfigParse, "tail must be 'halo_mean' or 'drop', got '" + s + "'");
}

LevyMeasure measure_from_json(const json& j, int dim) {
  only_keys(j, {"kind", "name", "alpha", "c", "atoms", "mirror_implied", "factor", "inner", "terms", "truncate"},
            "measure");
  const std::string kind = j.at("kind").get<std::string>();
  LevyMeasure mu = LevyMeasure::zero(dim);
  if (kind == "preset") {
    mu = measure_preset(j.at("name").get<std::string>(), dim);
  } else if (kind == "fractional") {
    mu = LevyMeasure::fractional(j.value("alpha", 1.0), dim, j.value("c", 1.0));
  } else if (kind == "atomic") {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
      only_keys(a, {"z", "w"}, "atom");
      const auto z = a.at("z").get<std::vector<double>>();
      require(static_cast<int>(z.size()) == dim, Errc::ConfigParse, "atom position has the wrong dimension");
      atoms.push_back({{z[0], dim == 2 ? z[1] : 0.0}, a.at("w").get<double>()});
    }
    mu = LevyMeasure::atomic(std::move(atoms), dim, j.value("mirror_implied", true));
  } else if (kind == "scaled") {
    mu = LevyMeasure::scaled(j.at("factor").get<double>(), measure_from_json(j.at("inner"), dim));
  } else if (kind == "sum") {
    std::vector<LevyMeasure> terms;
    for (const auto& t : j.at("terms")) terms.push_back(measure_from_json(t, dim));
    mu = LevyMeasure::sum(std::move(terms));
  } else {
    fail(Errc::ConfigParse, "unknown measure kind '" + kind + "'");
  }
  if (j.contains("truncate")) mu = mu.restricted(j.at("truncate").get<double>());
  return mu;
}

}  // namespace

Mode parse_mode(const std::string& s) {
  if (s == "solve") return Mode::Solve;
  if (s == "picard") return Mode::Picard;
  if (s == "vanishing") return Mode::Vanishing;
  if (s == "stability") return Mode::Stability;
  if (s == "gallery") return Mode::Gallery;
  fail(Errc::ConfigParse, "unknown mode '" + s + "'");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Solve: return "solve";
    case Mode::Picard: return "picard";
    case Mode::Vanishing: return "vanishing";
    case Mode::Stability: return "stability";
    case Mode::Gallery: return "gallery";
  }
  return "solve";
}

void apply_json(RunConfig& cfg, const json& j) {
  try {
    only_keys(j, {"problem", "measure", "mode", "out", "seed", "scheme", "diagnostics", "picard", "vanishing",
                  "stability"},
              "config");
    read(j, "problem", cfg.problem);
    read(j, "measure", cfg.measure);
    if (j.contains("mode")) cfg.mode = parse_mode(j.at("mode").get<std::string>());
    read(j, "out", cfg.out_dir);
    read(j, "seed", cfg.seed);
    if (j.contains("scheme")) {
      const json& s = j.at("scheme");
      only_keys(s, {"flux", "dx", "dt", "auto_cfl", "r", "Z", "T", "cadence", "tail"}, "scheme");
      if (s.contains("flux")) cfg.scheme.flux = parse_flux(s.at("flux").get<std::string>());
      read(s, "dx", cfg.scheme.dx);
      if (s.contains("dt")) {
        cfg.scheme.dt = s.at("dt").get<double>();
        cfg.scheme.auto_cfl = false;
      }
      read(s, "auto_cfl", cfg.scheme.auto_cfl);
      read(s, "r", cfg.scheme.r);
      read(s, "Z", cfg.scheme.Z);
      read(s, "T", cfg.scheme.T);
      read(s, "cadence", cfg.scheme.cadence);
      if (s.contains("tail")) cfg.scheme.tail = parse_tail(s.at("tail").get<std::string>());
    }
    if (j.contains("diagnostics")) {
      const json& d = j.at("diagnostics");
      only_keys(d, {"max_principle", "contraction", "balance", "energy", "moduli"}, "diagnostics");
      read(d, "max_principle", cfg.toggles.max_principle);
      read(d, "contraction", cfg.toggles.contraction);
      read(d, "balance", cfg.toggles.balance);
      read(d, "energy", cfg.toggles.energy);
      read(d, "moduli", cfg.toggles.moduli);
    }
    if (j.contains("picard")) {
      const json& p = j.at("picard");
      only_keys(p, {"max_iter", "tol"}, "picard");
      read(p, "max_iter", cfg.picard_max_iter);
      read(p, "tol", cfg.picard_tol);
    }
    if (j.contains("vanishing")) {
      const json& v = j.at("vanishing");
      only_keys(v, {"alpha", "n"}, "vanishing");
      read(v, "alpha", cfg.alpha);
      read(v, "n", cfg.chain);
    }
    if (j.contains("stability")) {
      const json& s = j.at("stability");
      only_keys(s, {"n", "reference"}, "stability");
      read(s, "n", cfg.truncations);
      read(s, "reference", cfg.reference_truncation);
    }
  } catch (const json::exception& e) {
    fail(Errc::ConfigParse, e.what());
  }
  require(cfg.scheme.dx > 0.0, Errc::ConfigParse, "dx must be positive");
  require(cfg.scheme.cadence >= 1, Errc::ConfigParse, "cadence must be at least 1");
}

RunConfig load_config_file(const std::string& path) {
  RunConfig cfg;
  apply_json(cfg, read_json_file(path));
  return cfg;
}

json to_json(const RunConfig& cfg) {
  const auto& s = cfg.scheme;
  return json{
      {"problem", cfg.problem},
      {"measure", cfg.measure},
      {"mode", to_string(cfg.mode)},
      {"seed", cfg.seed},
      {"scheme",
       {{"flux", s.flux == NumericalFlux::EngquistOsher ? "eo" : "lf"},
        {"dx", s.dx},
        {"dt", s.dt},
        {"auto_cfl", s.auto_cfl},
        {"r", s.r},
        {"Z", s.Z},
        {"T", s.T},
        {"cadence", s.cadence},
        {"tail", s.tail == TailPolicy::Drop ? "drop" : "halo_mean"}}},
      {"diagnostics",
       {{"max_principle", cfg.toggles.max_principle},
        {"contraction", cfg.toggles.contraction},
        {"balance", cfg.toggles.balance},
        {"energy", cfg.toggles.energy},
        {"moduli", cfg.toggles.moduli}}},
      {"picard", {{"max_iter", cfg.picard_max_iter}, {"tol", cfg.picard_tol}}},
      {"vanishing", {{"alpha", cfg.alpha}, {"n", cfg.chain}}},
      {"stability", {{"n", cfg.truncations}, {"reference", cfg.reference_truncation}}},
  };
}

ScalarFn scalar_fn_from_json(const json& j) {
  only_keys(j, {"kind", "param", "x", "y"}, "function");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return ScalarFn::zero();
  if (kind == "linear") return ScalarFn::linear(j.value("param", 1.0));
  if (kind == "burgers") return ScalarFn::burgers();
  if (kind == "identity") return ScalarFn::identity();
  if (kind == "power") return ScalarFn::power(j.value("param", 2.0));
  if (kind == "stefan") return ScalarFn::stefan(j.value("param", 0.5));
  if (kind == "table") return ScalarFn::table({j.at("x").get<std::vector<double>>(), j.at("y").get<std::vector<double>>()});
  fail(Errc::ConfigParse, "unknown function kind '" + kind + "'");
}

ProblemSpec load_problem(const std::string& ref) {
  if (!looks_like_file(ref)) return problem_preset(ref);
  const json j = read_json_file(ref);
  try {
    only_keys(j, {"base", "name", "flux", "direction", "diffusion", "T"}, "problem");
    ProblemSpec spec = problem_preset(j.at("base").get<std::string>());
    read(j, "name", spec.name);
    if (j.contains("flux")) spec.flux.g = scalar_fn_from_json(j.at("flux"));
    if (j.contains("direction")) {
      const auto d = j.at("direction").get<std::vector<double>>();
      require(static_cast<int>(d.size()) == spec.dim(), Errc::ConfigParse, "flux direction has the wrong dimension");
      spec.flux.direction = {d[0], spec.dim() == 2 ? d[1] : 0.0};
    }
    if (j.contains("diffusion")) spec.diffusion.b = scalar_fn_from_json(j.at("diffusion"));
    read(j, "T", spec.T);
    return spec;
  } catch (const json::exception& e) {
    fail(Errc::ConfigParse, ref + ": " + e.what());
  }
}

LevyMeasure load_measure(const std::string& ref, int dim) {
  if (!looks_like_file(ref)) return measure_preset(ref, dim);
  const json j = read_json_file(ref);
  try {
    return measure_from_json(j, dim);
  } catch (const json::exception& e) {
    fail(Errc::ConfigParse, ref + ": " + e.what());
  }
}

}  // namespace nldp::app
