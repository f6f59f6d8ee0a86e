#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "xdefect/cli/commands.hpp"

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("xdefect"));
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("XDEFECT_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
  const std::vector<std::string> args(argv, argv + argc);
  return xdefect::cli::run(args, std::cout, std::cerr);
}
