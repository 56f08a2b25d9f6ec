#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "njc/closed_forms.hpp"
#include "njc/optimizer.hpp"

namespace njc {

// One named verification result. `expected_lo == expected_hi` for a point
// expectation; `observed` holds the quantities the check looked at.
struct Check {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::vector<double> observed;
  double expected_lo = 0.0;
  double expected_hi = 0.0;
  double tolerance = 0.0;
  std::string provenance;
  std::string note;
  // Set by the non-l_n^1 and B-convexity checks.
  std::string verdict;
};

// Oracle-vs-estimate comparison for one (n, p, d, kind).
struct TableRow {
  int n = 2;
  Exponent p{2.0};
  Index d = 1;
  ConstantKind kind = ConstantKind::upper;
  bool skipped = false;
  std::string skip_reason;
  double oracle_lo = 0.0;
  double oracle_hi = 0.0;
  std::string oracle_provenance;
  double estimate = 0.0;
  std::string estimate_provenance;
  BoundStatus bound_status = BoundStatus::lower_bound_of_sup;
  double gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

using EchoValue = std::variant<std::int64_t, double, std::string>;

struct CheckReport {
  std::vector<Check> checks;
  std::vector<TableRow> table;
  // Echo of the configuration that produced the report, in insertion order.
  std::vector<std::pair<std::string, EchoValue>> config;

  int passed() const;
  int failed() const;
  int skipped() const;
  bool ok() const { return failed() == 0; }

  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const CheckReport& other);
};

void echo_optimizer(CheckReport& report, const OptimizerConfig& cfg);

enum class Verdict { certified_yes, certified_no, undetermined };
std::string to_string(Verdict v);

struct NonL1Detection {
  Verdict verdict = Verdict::undetermined;
  // The upper modified constant the verdict rests on (exact, closed form, or
  // the multistart lower bound).
  double upper_modified = 0.0;
  std::string basis;
  // 1 - sqrt(C/n) with C the upper modified constant: the James modulus, i.e.
  // min_theta ||x_1 +- ... +- x_n|| <= n (1 - delta) on S(X)^n.
  std::optional<double> delta_james;
  // 1 - sqrt(U/n) with U a certified upper bound of the plain upper constant:
  // min_theta ||x_1 +- ... +- x_n|| <= sqrt(n) (1 - delta) on the ball of l_n^2(X).
  std::optional<double> delta_sphere;
  ConstantEstimate estimate;
};

// Uniform non-l_n^1 test through the upper modified constant.
NonL1Detection detect_non_ln1(const Space& space, int n, const OptimizerConfig& cfg);

enum class Tristate { yes, no, undetermined };
std::string to_string(Tristate t);

struct BConvexity {
  // yes: some n <= n_max has a certified C < n. no: every n <= n_max is
  // certified C = n (no witness up to n_max). undetermined otherwise.
  Tristate b_convex = Tristate::undetermined;
  std::optional<int> witness_n;
  std::vector<NonL1Detection> per_n;
};

BConvexity b_convexity_scan(const Space& space, int n_max, const OptimizerConfig& cfg);

// Verdict from the plain upper constant: closed-form upper endpoint below n,
// or a multistart certificate reaching n.
Verdict plain_verdict(const Space& space, int n, const OptimizerConfig& cfg);

// detect_non_ln1 as report entries, plus agreement of the verdicts from the
// modified and the plain upper constants.
CheckReport non_l1_report(const Space& space, int n, const OptimizerConfig& cfg);
CheckReport b_convexity_report(const Space& space, int n_max, const OptimizerConfig& cfg);

// lower(l^q) * upper(l^p) >= 1 and lower(l^p) * upper(l^q) >= 1, estimated.
CheckReport duality_check(const Exponent& p, Index d, int n, const OptimizerConfig& cfg);

// Sampled inequalities for one space. `certified_delta` enables the
// sqrt(n)(1 - delta) check on the unit sphere of l_n^2(X).
CheckReport inequality_suite(const Space& space, int n, int samples, std::uint64_t seed,
                             std::optional<double> certified_delta = std::nullopt);

struct GridPoint {
  int n;
  Exponent p;
  Index d;
};

// n in {2, 3}, p in {1, 1.5, 2, 3, 4, inf}, d = max(n, 2^(n-1)).
std::vector<GridPoint> default_grid();

// Closed form for (kind, n, p, d) if one is known and its dimension
// condition holds. `reason` receives the explanation otherwise.
std::optional<ClosedFormValue> oracle_for(ConstantKind kind, int n, const Exponent& p, Index d,
                                          std::string* reason = nullptr);

CheckReport reproduce_table(const std::vector<GridPoint>& grid, const OptimizerConfig& cfg);

}  // namespace njc
