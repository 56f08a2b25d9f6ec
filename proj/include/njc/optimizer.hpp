#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "njc/kinds.hpp"
#include "njc/types.hpp"

namespace njc {

enum class Method { extreme_enumeration, multistart_gradient, seeded_candidates_only };

// How the reported value relates to the true sup / inf.
enum class BoundStatus { exact, lower_bound_of_sup, upper_bound_of_inf };

// Which procedure estimate_constant should use. `automatic` enumerates extreme
// points when that is exact and affordable, and runs multistart otherwise.
enum class MethodChoice { automatic, enumerate, multistart, seeds_only };

// Feasible set searched for the plain (non-modified) kinds.
enum class PlainDomain { sphere, ball };

enum class Direction { ascend, descend };

struct OptimizerConfig {
  int restarts = 200;
  int max_iterations = 500;
  double tolerance = 1e-10;
  double smoothing = 1e-12;
  std::uint64_t seed = 0;

  // Backtracking line search: first trial step (in tuple Euclidean length),
  // shrink factor on failure, growth factor on success, smallest step tried.
  double initial_step = 0.25;
  double shrink = 0.5;
  double growth = 2.0;
  double min_step = 1e-13;

  // Tuples evaluated by extreme-point enumeration before giving up.
  std::uint64_t enumeration_budget = 10'000'000;
  int max_n = kDefaultMaxN;

  // Worker threads for restarts; 0 reads NJC_THREADS and falls back to 1.
  // Results do not depend on this value.
  int threads = 0;

  MethodChoice method = MethodChoice::automatic;
  PlainDomain plain_domain = PlainDomain::sphere;

  void validate() const;
};

struct ConstantEstimate {
  ConstantKind kind = ConstantKind::upper;
  double value = 0.0;
  Tuple certificate;
  Method method = Method::multistart_gradient;
  BoundStatus bound_status = BoundStatus::lower_bound_of_sup;
  int restarts_used = 0;
  std::int64_t iterations_total = 0;
  std::uint64_t seed = 0;
  // Which start produced the certificate: seeds are numbered -k, ..., -1 in
  // seeded_candidates order, random restarts and enumerated tuples 0, 1, ...
  std::int64_t best_index = 0;
};

struct LocalSearchResult {
  Tuple tuple;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

std::string to_string(Method m);
std::string to_string(BoundStatus b);
MethodChoice parse_method(const std::string& text);

// Sup (upper kinds) or inf (lower kinds) of C^(n) over the kind's feasible set.
// The restart pool always contains seeded_candidates. Deterministic in
// cfg.seed for any thread count.
ConstantEstimate estimate_constant(const Space& space, int n, ConstantKind kind,
                                   const OptimizerConfig& cfg);

// Exact upper modified constant for p in {1, inf}: C^(n) has a convex
// numerator and a constant denominator on S(X)^n, so its max over the
// product of balls sits on a product of vertices. Each x_j runs over one
// representative per antipodal pair of vertices.
ConstantEstimate enumerate_extreme(const Space& space, int n, ConstantKind kind,
                                   const OptimizerConfig& cfg);

// Monotone local improvement from `start`. Projected gradient with
// backtracking for 1 < p < inf; random coordinate moves and vertex pivots for
// p in {1, inf}. `stream` seeds the random moves.
LocalSearchResult local_search(const Space& space, const Tuple& start, Direction direction,
                               ConstantKind kind, const OptimizerConfig& cfg,
                               std::uint64_t stream = 0);

// Known extremal tuples that fit in the space, each on S(X)^n, in this order:
// (e_1, ..., e_n) when dim >= n; the columns of A_n scaled to unit p-norm
// when dim >= 2^(n-1); (e_1, ..., e_1).
std::vector<Tuple> seeded_candidates(const Space& space, int n);

// Maps a tuple onto the kind's feasible set (S(X)^n for modified kinds,
// S(l_n^2(X)) or its ball for plain kinds). Returns false for tuples that
// cannot be mapped (a zero column, or the zero tuple).
bool retract(const Space& space, ConstantKind kind, PlainDomain domain, Tuple& t);

int resolve_threads(int requested);

}  // namespace njc
