#pragma once

#include <optional>
#include <string>
#include <vector>

#include "njc/analyzer.hpp"
#include "njc/optimizer.hpp"
#include "njc/report_io.hpp"

namespace njc::cli {

enum class Command { compute, verify, check, matrix };

struct RunConfig {
  Command command = Command::compute;
  std::optional<Space> space;
  int n = 2;
  ConstantKind kind = ConstantKind::upper_modified;
  // auto, enumerate, multistart, seeds or closed-form.
  std::string method = "auto";
  // json, csv or text.
  std::string format = "json";
  // Empty for standard output.
  std::string output;
  // "default" or "n,p,d;n,p,d;...".
  std::string grid = "default";
  // all, inequalities, non-l1, duality or b-convexity.
  std::string suite = "all";
  int samples = 10000;
  int n_max = 4;
  OptimizerConfig optimizer;
};

struct RunResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// Exit codes: 0 success, 1 a check failed, 2 usage or precondition error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

int exit_code_for(const CheckReport& report);

// `args` excludes the program name. Writes the output to cfg.output when
// given; the serialized output is returned either way.
RunResult run(const std::vector<std::string>& args);

// Parses `args` without running anything. Throws on bad input.
RunConfig parse_args(const std::vector<std::string>& args);

// The block echoed under "config" in every JSON report. Thread count and
// output path are left out so that reports do not depend on them.
Json echo(const RunConfig& cfg);
RunConfig config_from_echo(const Json& j);

// "lp:p=<p>,dim=<d>" with p a number or inf.
Space parse_space(const std::string& text);
std::vector<GridPoint> parse_grid(const std::string& text);

std::string to_string(Command c);

}  // namespace njc::cli
