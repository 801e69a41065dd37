#include "cli.hpp"

int main(int argc, char** argv) { return nldp::app::cli_main(argc, argv); }
