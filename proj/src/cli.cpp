#include "njc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "njc/closed_forms.hpp"
#include "njc/functional.hpp"
#include "njc/hadamard.hpp"

namespace njc::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

long long parse_integer(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw Error("invalid " + what + " '" + text + "'");
  }
  if (used != text.size()) throw Error("invalid " + what + " '" + text + "'");
  return v;
}

Command parse_command(const std::string& s) {
  if (s == "compute") return Command::compute;
  if (s == "verify") return Command::verify;
  if (s == "check") return Command::check;
  if (s == "matrix") return Command::matrix;
  throw Error("unknown command '" + s + "'");
}

std::string grid_text(const std::vector<GridPoint>& grid) {
  std::string out;
  for (const auto& g : grid) {
    if (!out.empty()) out += ';';
    out += std::to_string(g.n) + ',' + g.p.to_string() + ',' + std::to_string(g.d);
  }
  return out;
}

void validate(const RunConfig& cfg) {
  cfg.optimizer.validate();
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text") {
    throw Error("unknown format '" + cfg.format + "' (expected json, csv or text)");
  }
  if (cfg.method != "closed-form") parse_method(cfg.method);
  static const std::vector<std::string> suites{"all", "inequalities", "non-l1", "duality",
                                               "b-convexity"};
  if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end()) {
    throw Error("unknown suite '" + cfg.suite + "'");
  }
  if (cfg.samples < 1) throw Error("samples must be >= 1");
  if (cfg.command == Command::verify) {
    for (const auto& g : parse_grid(cfg.grid)) check_tuple_size(g.n, cfg.optimizer.max_n);
  } else {
    check_tuple_size(cfg.n, cfg.optimizer.max_n);
  }
  if (cfg.command == Command::check && cfg.suite == "b-convexity") {
    check_tuple_size(cfg.n_max, cfg.optimizer.max_n);
  }
  if ((cfg.command == Command::compute || cfg.command == Command::check) && !cfg.space) {
    throw Error("--space is required");
  }
}

Json report_envelope(const RunConfig& cfg) {
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = to_string(cfg.command);
  out["config"] = echo(cfg);
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

RunResult finish_checks(const RunConfig& cfg, const CheckReport& report) {
  RunResult r;
  if (cfg.format == "json") {
    Json out = report_envelope(cfg);
    const Json body = checks_json(report);
    for (const auto& [k, v] : body.items()) out[k] = v;
    r.out = dump(out);
  } else if (cfg.format == "csv") {
    r.out = checks_csv(report);
  } else {
    r.out = checks_text(report);
  }
  r.exit_code = exit_code_for(report);
  return r;
}

RunResult run_compute(const RunConfig& cfg) {
  const Space& space = *cfg.space;
  RunResult r;
  Json out = report_envelope(cfg);
  if (cfg.method == "closed-form") {
    const auto cf = closed_form(cfg.kind, cfg.n, space.exponent(), space.dim());
    if (cfg.format == "json") {
      out["result"] = closed_form_json(cf);
      r.out = dump(out);
    } else if (cfg.format == "csv") {
      r.out = "kind,n,p,d,lo,hi,provenance\n" + to_string(cf.kind) + ',' + std::to_string(cfg.n) +
              ',' + space.exponent().to_string() + ',' + std::to_string(space.dim()) + ',' +
              format_exact(cf.lo) + ',' + format_exact(cf.hi) + ",\"oracle: " + cf.provenance +
              "\"\n";
    } else {
      r.out = to_string(cf.kind) + " of " + space.to_string() + ", n = " + std::to_string(cfg.n) +
              ": " + (cf.is_point() ? format_display(cf.lo)
                                      : "[" + format_display(cf.lo) + ", " +
                                            format_display(cf.hi) + "]") +
              " (oracle: " + cf.provenance + ")\n";
    }
    return r;
  }

  OptimizerConfig oc = cfg.optimizer;
  oc.method = parse_method(cfg.method);
  const auto est = estimate_constant(space, cfg.n, cfg.kind, oc);
  const auto oracle = oracle_for(cfg.kind, cfg.n, space.exponent(), space.dim());
  if (cfg.format == "json") {
    out["result"] = estimate_json(est);
    out["oracle"] = oracle ? closed_form_json(*oracle) : Json(nullptr);
    r.out = dump(out);
  } else if (cfg.format == "csv") {
    r.out = estimate_csv(est, cfg.n, space);
  } else {
    std::ostringstream os;
    os << to_string(cfg.kind) << " of " << space.to_string() << ", n = " << cfg.n << ": "
       << format_display(est.value) << " (" << to_string(est.bound_status) << ", estimate: "
       << to_string(est.method) << ")\n";
    if (oracle) {
      os << "oracle: "
         << (oracle->is_point() ? format_display(oracle->lo)
                                : "[" + format_display(oracle->lo) + ", " +
                                      format_display(oracle->hi) + "]")
         << " (" << oracle->provenance << ")\n";
    }
    os << "certificate:\n";
    for (Index j = 0; j < est.certificate.cols(); ++j) {
      os << "  x" << j + 1 << " =";
      for (Index i = 0; i < est.certificate.rows(); ++i) {
        os << ' ' << format_display(est.certificate(i, j));
      }
      os << '\n';
    }
    r.out = os.str();
  }
  return r;
}

// Adds the keys of `from` that `into` does not have yet.
void merge_config(CheckReport& into, const CheckReport& from) {
  for (const auto& kv : from.config) {
    const bool seen = std::any_of(into.config.begin(), into.config.end(),
                                  [&](const auto& e) { return e.first == kv.first; });
    if (!seen) into.config.push_back(kv);
  }
}

RunResult run_check(const RunConfig& cfg) {
  const Space& space = *cfg.space;
  const OptimizerConfig& oc = cfg.optimizer;
  if (cfg.suite == "b-convexity") return finish_checks(cfg, b_convexity_report(space, cfg.n_max, oc));

  CheckReport report;
  std::optional<double> delta;
  if (cfg.suite == "all" || cfg.suite == "non-l1") {
    const CheckReport det = non_l1_report(space, cfg.n, oc);
    report.append(det);
    merge_config(report, det);
    if (cfg.suite == "all") delta = detect_non_ln1(space, cfg.n, oc).delta_sphere;
  }
  if (cfg.suite == "all" || cfg.suite == "inequalities") {
    const CheckReport ineq = inequality_suite(space, cfg.n, cfg.samples, oc.seed, delta);
    report.append(ineq);
    merge_config(report, ineq);
  }
  if (cfg.suite == "all" || cfg.suite == "duality") {
    const CheckReport dual = duality_check(space.exponent(), space.dim(), cfg.n, oc);
    report.append(dual);
    merge_config(report, dual);
  }
  return finish_checks(cfg, report);
}

RunResult run_matrix(const RunConfig& cfg) {
  const SignMatrix m(cfg.n);
  RunResult r;
  if (cfg.format == "json") {
    Json out = report_envelope(cfg);
    out["matrix"] = matrix_json(m);
    r.out = dump(out);
  } else if (cfg.format == "csv") {
    r.out = matrix_csv(m);
  } else {
    std::ostringstream os;
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.n(); ++j) os << (m(i, j) > 0 ? " +1" : " -1");
      os << '\n';
    }
    r.out = os.str();
  }
  return r;
}

struct HelpRequested {
  std::string text;
};

struct RawArgs {
  std::string space;
  std::string kind = "upper-modified";
};

void add_optimizer_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--restarts", cfg.optimizer.restarts, "random restarts after the seeded candidates");
  sub->add_option("--max-iter", cfg.optimizer.max_iterations, "iterations per local search");
  sub->add_option("--tol", cfg.optimizer.tolerance, "stopping tolerance of the local search");
  sub->add_option("--seed", cfg.optimizer.seed, "seed of all random choices");
  sub->add_option("--threads", cfg.optimizer.threads,
                  "worker threads (default: NJC_THREADS, else 1); results do not depend on it");
}

void add_output_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "json, csv or text");
  sub->add_option("--output,-o", cfg.output, "output file (default: standard output)");
}

}  // namespace

int exit_code_for(const CheckReport& report) { return report.ok() ? kExitOk : kExitCheckFailed; }

std::string to_string(Command c) {
  switch (c) {
    case Command::compute: return "compute";
    case Command::verify: return "verify";
    case Command::check: return "check";
    case Command::matrix: return "matrix";
  }
  return "?";
}

Space parse_space(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || trim(text.substr(0, colon)) != "lp") {
    throw Error("invalid space '" + text + "' (expected lp:p=<p>,dim=<d>)");
  }
  std::optional<Exponent> p;
  std::optional<long long> dim;
  for (const auto& part : split(text.substr(colon + 1), ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error("invalid space field '" + part + "'");
    const std::string key = trim(part.substr(0, eq));
    const std::string value = trim(part.substr(eq + 1));
    if (key == "p") {
      p = Exponent::parse(value);
    } else if (key == "dim" || key == "d") {
      dim = parse_integer(value, "dimension");
    } else {
      throw Error("unknown space field '" + key + "'");
    }
  }
  if (!p || !dim) throw Error("space '" + text + "' needs both p and dim");
  if (*dim < 1) throw OutOfRange("dimension must be >= 1, got " + std::to_string(*dim));
  return Space(*p, static_cast<Index>(*dim));
}

std::vector<GridPoint> parse_grid(const std::string& text) {
  if (text == "default") return default_grid();
  std::vector<GridPoint> grid;
  for (const auto& item : split(text, ';')) {
    if (trim(item).empty()) continue;
    const auto f = split(item, ',');
    if (f.size() != 3) throw Error("invalid grid point '" + item + "' (expected n,p,d)");
    const long long n = parse_integer(trim(f[0]), "n");
    const long long d = parse_integer(trim(f[2]), "dimension");
    if (n < 2 || n > kDefaultMaxN) throw OutOfRange("grid n = " + std::to_string(n) + " outside [2, 20]");
    if (d < 1) throw OutOfRange("grid dimension must be >= 1");
    grid.push_back({static_cast<int>(n), Exponent::parse(trim(f[1])), static_cast<Index>(d)});
  }
  if (grid.empty()) throw Error("empty grid");
  return grid;
}

Json echo(const RunConfig& cfg) {
  Json j;
  j["command"] = to_string(cfg.command);
  if (cfg.command == Command::compute || cfg.command == Command::check) {
    j["space"] = {{"p", exponent_json(cfg.space->exponent())}, {"dim", cfg.space->dim()}};
  }
  if (cfg.command != Command::verify) j["n"] = cfg.n;
  if (cfg.command == Command::compute) {
    j["kind"] = to_string(cfg.kind);
    j["method"] = cfg.method;
  }
  if (cfg.command == Command::verify) {
    j["grid"] = cfg.grid == "default" ? std::string("default") : grid_text(parse_grid(cfg.grid));
  }
  if (cfg.command == Command::check) {
    j["suite"] = cfg.suite;
    j["samples"] = cfg.samples;
    j["n_max"] = cfg.n_max;
  }
  if (cfg.command != Command::matrix) {
    j["restarts"] = cfg.optimizer.restarts;
    j["max_iterations"] = cfg.optimizer.max_iterations;
    j["tolerance"] = cfg.optimizer.tolerance;
    j["seed"] = cfg.optimizer.seed;
  }
  j["format"] = cfg.format;
  return j;
}

RunConfig config_from_echo(const Json& j) {
  RunConfig cfg;
  cfg.command = parse_command(j.at("command").get<std::string>());
  if (j.contains("space")) {
    cfg.space = Space(exponent_from_json(j["space"].at("p")), j["space"].at("dim").get<Index>());
  }
  if (j.contains("n")) cfg.n = j["n"].get<int>();
  if (j.contains("kind")) cfg.kind = parse_kind(j["kind"].get<std::string>());
  if (j.contains("method")) cfg.method = j["method"].get<std::string>();
  if (j.contains("grid")) cfg.grid = j["grid"].get<std::string>();
  if (j.contains("suite")) cfg.suite = j["suite"].get<std::string>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
  if (j.contains("restarts")) cfg.optimizer.restarts = j["restarts"].get<int>();
  if (j.contains("max_iterations")) cfg.optimizer.max_iterations = j["max_iterations"].get<int>();
  if (j.contains("tolerance")) cfg.optimizer.tolerance = j["tolerance"].get<double>();
  if (j.contains("seed")) cfg.optimizer.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  return cfg;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  RawArgs raw;
  CLI::App app{"n-th von Neumann-Jordan constants of l^p spaces", "njc"};
  app.require_subcommand(1);

  auto* compute = app.add_subcommand("compute", "estimate or look up one constant");
  compute->add_option("--space", raw.space, "lp:p=<p>,dim=<d>; p may be inf")->required();
  compute->add_option("--n", cfg.n, "tuple length");
  compute->add_option("--kind", raw.kind, "upper, lower, upper-modified or lower-modified");
  compute->add_option("--method", cfg.method, "auto, enumerate, multistart, seeds or closed-form");
  add_optimizer_options(compute, cfg);
  add_output_options(compute, cfg);

  auto* verify = app.add_subcommand("verify", "compare estimates with closed forms on a grid");
  verify->add_option("--grid", cfg.grid, "default, or n,p,d;n,p,d;...");
  add_optimizer_options(verify, cfg);
  add_output_options(verify, cfg);

  auto* check = app.add_subcommand("check", "run verification suites for one space");
  check->add_option("--space", raw.space, "lp:p=<p>,dim=<d>; p may be inf")->required();
  check->add_option("--n", cfg.n, "tuple length");
  check->add_option("--suite", cfg.suite, "all, inequalities, non-l1, duality or b-convexity");
  check->add_option("--samples", cfg.samples, "random tuples per sampled inequality");
  check->add_option("--n-max", cfg.n_max, "largest n of the B-convexity scan");
  add_optimizer_options(check, cfg);
  add_output_options(check, cfg);

  auto* matrix = app.add_subcommand("matrix", "print the sign matrix A_n");
  matrix->add_option("--n", cfg.n, "tuple length");
  add_output_options(matrix, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) throw;
    std::ostringstream out;
    std::ostringstream err;
    app.exit(e, out, err);
    throw HelpRequested{out.str()};
  }

  if (compute->parsed()) cfg.command = Command::compute;
  if (verify->parsed()) cfg.command = Command::verify;
  if (check->parsed()) cfg.command = Command::check;
  if (matrix->parsed()) cfg.command = Command::matrix;
  if (!raw.space.empty()) cfg.space = parse_space(raw.space);
  cfg.kind = parse_kind(raw.kind);
  validate(cfg);
  return cfg;
}

RunResult run(const std::vector<std::string>& args) {
  RunResult r;
  RunConfig cfg;
  try {
    cfg = parse_args(args);
    switch (cfg.command) {
      case Command::compute: r = run_compute(cfg); break;
      case Command::verify: r = finish_checks(cfg, reproduce_table(parse_grid(cfg.grid), cfg.optimizer)); break;
      case Command::check: r = run_check(cfg); break;
      case Command::matrix: r = run_matrix(cfg); break;
    }
  } catch (const HelpRequested& h) {
    r.exit_code = kExitOk;
    r.out = h.text;
    return r;
  } catch (const CLI::ParseError& e) {
    r.exit_code = kExitUsage;
    r.err = std::string("error: ") + e.what() + "\n";
    return r;
  } catch (const std::exception& e) {
    r.exit_code = kExitUsage;
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    r.err = "error: " + msg + "\n";
    return r;
  }
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f || !(f << r.out)) {
      r.exit_code = kExitUsage;
      r.err = "error: cannot write " + cfg.output + "\n";
    }
  }
  return r;
}

}  // namespace njc::cli
