#include <iostream>

#include "pcortho/cli.hpp"

int main(int argc, char** argv) {
  pcortho::cli::CliConfig config;
  if (auto status = pcortho::cli::parse_args(argc, argv, config, std::cout, std::cerr)) return *status;
  return pcortho::cli::run(config, std::cout, std::cerr);
}
