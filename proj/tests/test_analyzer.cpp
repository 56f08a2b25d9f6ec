#include <doctest.h>

#include <cmath>

#include "njc/analyzer.hpp"

using namespace njc;

namespace {

OptimizerConfig quick(int restarts = 20) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = 3;
  return cfg;
}

const Check* find_check(const CheckReport& r, const std::string& prefix) {
  for (const auto& c : r.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("non-l_n^1 verdicts") {
  const auto cfg = quick();
  const auto hilbert = detect_non_ln1(Space(Exponent(2.0), 2), 2, cfg);
  CHECK(hilbert.verdict == Verdict::certified_yes);
  REQUIRE(hilbert.delta_james);
  CHECK(*hilbert.delta_james == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE(hilbert.delta_sphere);
  CHECK(*hilbert.delta_sphere == doctest::Approx(*hilbert.delta_james).epsilon(1e-12));

  const auto l15 = detect_non_ln1(Space(Exponent(1.5), 3), 2, cfg);
  CHECK(l15.verdict == Verdict::certified_yes);
  CHECK(*l15.delta_james == doctest::Approx(1.0 - std::sqrt(std::cbrt(2.0) / 2)).epsilon(1e-12));

  const auto l1 = detect_non_ln1(Space(Exponent(1.0), 2), 2, cfg);
  CHECK(l1.verdict == Verdict::certified_no);
  CHECK(l1.estimate.value >= 2.0 - 1e-9);
  CHECK_FALSE(l1.delta_james);

  const auto linf = detect_non_ln1(Space(Exponent::infinity(), 4), 3, cfg);
  CHECK(linf.verdict == Verdict::certified_no);

  // Exact enumeration certifies l^inf_2 as uniformly non-l_3^1.
  const auto small = detect_non_ln1(Space(Exponent::infinity(), 2), 3, cfg);
  CHECK(small.verdict == Verdict::certified_yes);
  CHECK(small.upper_modified < 3.0);
  CHECK_FALSE(small.delta_sphere);
}

TEST_CASE("a multistart value below n is not a certificate") {
  // No closed form for l^3 with dim < 2^(n-1), and no enumeration for p = 3.
  const auto det = detect_non_ln1(Space(Exponent(3.0), 2), 3, quick(5));
  CHECK(det.verdict == Verdict::undetermined);
}

TEST_CASE("modified and plain verdicts agree") {
  for (Exponent p : {Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(4.0), Exponent::infinity()}) {
    const auto r = non_l1_report(Space(p, 4), 3, quick());
    CHECK(r.ok());
    const Check* agree = find_check(r, "modified and plain verdicts agree");
    REQUIRE(agree);
    CHECK((agree->skipped || agree->passed));
  }
}

TEST_CASE("B-convexity scan") {
  const auto cfg = quick(10);
  const auto l3 = b_convexity_scan(Space(Exponent(3.0), 4), 3, cfg);
  CHECK(l3.b_convex == Tristate::yes);
  CHECK(l3.witness_n == 2);
  const auto l1 = b_convexity_scan(Space(Exponent(1.0), 3), 3, cfg);
  CHECK(l1.b_convex == Tristate::no);
  CHECK(l1.per_n.size() == 2);
  CHECK_FALSE(l1.witness_n);
}

TEST_CASE("duality products") {
  for (double p : {1.0, 2.0, 4.0}) {
    const auto r = duality_check(Exponent(p), 2, 2, quick());
    CHECK(r.ok());
    CHECK(r.checks.size() == 2);
    bool echoed = false;
    for (const auto& kv : r.config) echoed = echoed || kv.first == "tol_product";
    CHECK(echoed);
  }
}

TEST_CASE("inequality suite") {
  const auto r3 = inequality_suite(Space(Exponent(3.0), 3), 3, 2000, 1);
  CHECK(r3.ok());
  const Check* moment = find_check(r3, "sum_theta");
  REQUIRE(moment);
  CHECK_FALSE(moment->skipped);
  CHECK(moment->observed[0] == 0.0);
  CHECK(moment->observed[1] <= 1.0);

  const auto r15 = inequality_suite(Space(Exponent(1.5), 3), 3, 500, 1);
  CHECK(r15.ok());
  CHECK(r15.skipped() >= 1);

  const auto r2 = inequality_suite(Space(Exponent(2.0), 2), 2, 2000, 1, 1.0 - 1.0 / std::sqrt(2.0));
  CHECK(r2.ok());
  const Check* delta = find_check(r2, "min_theta");
  REQUIRE(delta);
  CHECK_FALSE(delta->skipped);

  CHECK_THROWS_AS(inequality_suite(Space(Exponent(2.0), 2), 2, 0, 1), Error);
}

TEST_CASE("an overclaimed delta is caught") {
  const auto r = inequality_suite(Space(Exponent(2.0), 2), 2, 2000, 1, 0.5);
  CHECK_FALSE(r.ok());
}

TEST_CASE("oracle lookup") {
  std::string reason;
  CHECK(oracle_for(ConstantKind::upper_modified, 3, Exponent(4.0), 4));
  CHECK_FALSE(oracle_for(ConstantKind::upper_modified, 3, Exponent(4.0), 3, &reason));
  CHECK(reason.find("2^(n-1)") != std::string::npos);
  CHECK_FALSE(oracle_for(ConstantKind::lower, 2, Exponent(1.5), 2, &reason));
}

TEST_CASE("reproduce_table on a small grid") {
  const std::vector<GridPoint> grid{{2, Exponent(4.0), 2}, {3, Exponent(4.0), 3}, {3, Exponent(1.0), 3}};
  const auto r = reproduce_table(grid, quick());
  CHECK(r.ok());
  int skipped = 0;
  for (const auto& row : r.table) {
    if (row.skipped) {
      ++skipped;
      CHECK_FALSE(row.skip_reason.empty());
      continue;
    }
    CHECK(row.pass);
    CHECK(row.oracle_provenance.rfind("oracle: ", 0) == 0);
    CHECK(row.estimate_provenance.rfind("estimate: ", 0) == 0);
  }
  // (3, 4, 3) misses dim >= 4 for both upper kinds.
  CHECK(skipped == 2);
}

TEST_CASE("default grid") {
  const auto g = default_grid();
  CHECK(g.size() == 12);
  for (const auto& pt : g) CHECK(pt.d == std::max<Index>(pt.n, Index{1} << (pt.n - 1)));
}
