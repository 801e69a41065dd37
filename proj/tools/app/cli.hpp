#pragma once

namespace nldp::app {

/// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error, 3 runtime error.
int cli_main(int argc, const char* const* argv);

}  // namespace nldp::app
