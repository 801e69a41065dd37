#pragma once

#include <string>

#include "config.hpp"
#include "report.hpp"

namespace nldp::app {

/// Executes one mode and writes its artifacts into cfg.out_dir.
Report run(const RunConfig& cfg);

/// appendix, apriori or chains (UnknownSuite otherwise). Checks run on
/// NLDP_THREADS workers; results keep their declaration order.
Report run_suite(const std::string& name, std::uint64_t seed);

std::vector<std::string> suite_names();

}  // namespace nldp::app
