#include <iostream>

#include "njc/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = njc::cli::run(args);
  const bool to_file = [&] {
    for (const auto& a : args) {
      if (a == "--output" || a == "-o" || a.rfind("--output=", 0) == 0) return true;
    }
    return false;
  }();
  if (!to_file || result.exit_code == njc::cli::kExitUsage) std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
