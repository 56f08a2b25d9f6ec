#include "njc/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <random>
#include <thread>

#include "njc/functional.hpp"
#include "njc/hadamard.hpp"
#include "njc/space.hpp"

namespace njc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of start `index`, a pure function of (master, index).
std::uint64_t start_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

// Values closer than this (relative) count as ties; ties keep the earlier
// candidate.
constexpr double kTieWindow = 1e-12;

bool beats(double candidate, double incumbent, Direction dir) {
  const double w = kTieWindow * std::max(1.0, std::abs(incumbent));
  return dir == Direction::ascend ? candidate > incumbent + w : candidate < incumbent - w;
}

// Acceptance test inside a local search; only rejects rounding noise.
bool improves(double candidate, double current, Direction dir) {
  const double w = 4e-16 * std::max(1.0, std::abs(current));
  return dir == Direction::ascend ? candidate > current + w : candidate < current - w;
}

Direction direction_of(ConstantKind kind) {
  return is_upper(kind) ? Direction::ascend : Direction::descend;
}

LocalSearchResult smooth_search(const Space& space, Tuple x, Direction dir, ConstantKind kind,
                                const OptimizerConfig& cfg) {
  LocalSearchResult out;
  double f = evaluate_cn(space, x, cfg.max_n);
  const double scale = std::max(x.norm(), 1e-300);
  const double max_step = 4.0 * cfg.initial_step * scale;
  double step = cfg.initial_step * scale;
  const Exponent& p = space.exponent();

  for (int it = 0; it < cfg.max_iterations; ++it) {
    out.iterations = it + 1;
    Tuple g = grad_cn(space, x, cfg.smoothing, cfg.max_n);
    if (dir == Direction::descend) g = -g;
    if (is_modified(kind)) {
      // Drop the component normal to each sphere S(X) at x_j.
      for (Index j = 0; j < g.cols(); ++j) {
        const Vector xj = x.col(j);
        const Vector normal = detail::grad_sq_norm(p, xj, cfg.smoothing);
        const double nn = normal.squaredNorm();
        if (nn > 0) g.col(j) -= (g.col(j).dot(normal) / nn) * normal;
      }
    }
    const double gn = g.norm();
    if (!(gn > 0) || !std::isfinite(gn)) {
      out.converged = true;
      break;
    }
    g /= gn;

    bool accepted = false;
    double fy = f;
    Tuple y;
    while (step >= cfg.min_step) {
      y = x + step * g;
      if (retract(space, kind, cfg.plain_domain, y)) {
        fy = evaluate_cn(space, y, cfg.max_n);
        if (improves(fy, f, dir)) {
          accepted = true;
          break;
        }
      }
      step *= cfg.shrink;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    const double gain = std::abs(fy - f);
    x = std::move(y);
    f = fy;
    step = std::min(step * cfg.growth, max_step);
    if (gain < cfg.tolerance) {
      out.converged = true;
      break;
    }
  }
  out.tuple = std::move(x);
  out.value = f;
  return out;
}

Vector random_vertex(const Space& space, std::mt19937_64& rng) {
  const Index d = space.dim();
  Vector v = Vector::Zero(d);
  if (space.exponent().is_infinite()) {
    std::bernoulli_distribution coin(0.5);
    for (Index i = 0; i < d; ++i) v(i) = coin(rng) ? 1.0 : -1.0;
  } else {
    std::uniform_int_distribution<Index> pick(0, 2 * d - 1);
    const Index k = pick(rng);
    v(k / 2) = (k % 2 == 0) ? 1.0 : -1.0;
  }
  return v;
}

LocalSearchResult polyhedral_search(const Space& space, Tuple x, Direction dir, ConstantKind kind,
                                    const OptimizerConfig& cfg, std::uint64_t stream) {
  LocalSearchResult out;
  std::mt19937_64 rng(stream);
  const Index d = x.rows();
  const Index n = x.cols();
  std::uniform_int_distribution<Index> pick_col(0, n - 1);
  std::uniform_int_distribution<Index> pick_row(0, d - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double f = evaluate_cn(space, x, cfg.max_n);
  double step = cfg.initial_step;
  const double stop_step = std::max(cfg.min_step, 1e-10);
  const Index tries = std::min<Index>(256, 4 * n * d + 4);

  for (int it = 0; it < cfg.max_iterations; ++it) {
    out.iterations = it + 1;
    bool accepted = false;
    for (Index k = 0; k < tries; ++k) {
      Tuple y = x;
      const Index j = pick_col(rng);
      if (unit(rng) < 0.25) {
        const double s = std::min(1.0, step);
        y.col(j) = (1.0 - s) * y.col(j) + s * random_vertex(space, rng);
      } else {
        y(pick_row(rng), j) += unit(rng) < 0.5 ? step : -step;
      }
      if (!retract(space, kind, cfg.plain_domain, y)) continue;
      const double fy = evaluate_cn(space, y, cfg.max_n);
      if (improves(fy, f, dir)) {
        x = std::move(y);
        f = fy;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      step *= cfg.shrink;
      if (step < stop_step) {
        out.converged = true;
        break;
      }
    }
  }
  out.tuple = std::move(x);
  out.value = f;
  return out;
}

Tuple random_start(const Space& space, int n, ConstantKind kind, const OptimizerConfig& cfg,
                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Tuple t(space.dim(), n);
  for (int j = 0; j < n; ++j) t.col(j) = sample_sphere(space, rng);
  if (!is_modified(kind)) {
    for (int j = 0; j < n; ++j) t.col(j) *= std::abs(gauss(rng)) + 1e-3;
    t /= tuple_l2x_norm(space, t);
    if (cfg.plain_domain == PlainDomain::ball) {
      std::uniform_real_distribution<double> radius(0.05, 1.0);
      t *= radius(rng);
    }
  }
  return t;
}

// Number of representative tuples enumerate_extreme walks, or 0 on overflow.
std::uint64_t enumeration_size(const Space& space, int n) {
  const Exponent& p = space.exponent();
  if (!p.is_polyhedral()) return 0;
  if (p.is_infinite() && space.dim() > 62) return 0;
  const std::uint64_t reps = p.is_infinite() ? (std::uint64_t{1} << (space.dim() - 1))
                                             : static_cast<std::uint64_t>(space.dim());
  std::uint64_t total = 1;
  for (int j = 0; j < n; ++j) {
    if (__builtin_mul_overflow(total, reps, &total)) return 0;
  }
  return total;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw Error("restarts must be >= 1");
  if (max_iterations < 1) throw Error("max-iterations must be >= 1");
  if (!(tolerance > 0)) throw Error("tolerance must be positive");
  if (!(smoothing > 0)) throw Error("smoothing must be positive");
  if (!(initial_step > 0) || !(min_step > 0)) throw Error("step sizes must be positive");
  if (!(shrink > 0 && shrink < 1)) throw Error("shrink factor must lie in (0, 1)");
  if (!(growth >= 1)) throw Error("growth factor must be >= 1");
  if (enumeration_budget < 1) throw Error("enumeration budget must be >= 1");
  if (max_n < 2) throw Error("max_n must be >= 2");
  if (threads < 0) throw Error("threads must be >= 0");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::extreme_enumeration: return "extreme-enumeration";
    case Method::multistart_gradient: return "multistart-gradient";
    case Method::seeded_candidates_only: return "seeded-candidates-only";
  }
  return "?";
}

std::string to_string(BoundStatus b) {
  switch (b) {
    case BoundStatus::exact: return "exact";
    case BoundStatus::lower_bound_of_sup: return "lower-bound-of-sup";
    case BoundStatus::upper_bound_of_inf: return "upper-bound-of-inf";
  }
  return "?";
}

MethodChoice parse_method(const std::string& text) {
  if (text == "auto") return MethodChoice::automatic;
  if (text == "enumerate") return MethodChoice::enumerate;
  if (text == "multistart") return MethodChoice::multistart;
  if (text == "seeds") return MethodChoice::seeds_only;
  throw Error("unknown method '" + text + "' (expected auto, enumerate, multistart or seeds)");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NJC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

bool retract(const Space& space, ConstantKind kind, PlainDomain domain, Tuple& t) {
  if (!t.allFinite()) return false;
  if (is_modified(kind)) {
    for (Index j = 0; j < t.cols(); ++j) {
      const double r = detail::pnorm(space.exponent(), t.col(j));
      if (!(r > 0)) return false;
      t.col(j) /= r;
    }
    return true;
  }
  const double r = tuple_l2x_norm(space, t);
  if (!(r > 0)) return false;
  if (domain == PlainDomain::sphere || r > 1.0) t /= r;
  return true;
}

std::vector<Tuple> seeded_candidates(const Space& space, int n) {
  check_tuple_size(n);
  const Index d = space.dim();
  std::vector<Tuple> out;
  if (d >= n) out.push_back(Tuple::Identity(d, n));
  const Index rows = Index{1} << (n - 1);
  if (d >= rows) {
    Tuple z = Tuple::Zero(d, n);
    const double scale = std::pow(static_cast<double>(rows), space.exponent().reciprocal());
    z.topRows(rows) = SignMatrix(n).cast<double>() / scale;
    out.push_back(std::move(z));
  }
  Tuple same = Tuple::Zero(d, n);
  same.row(0).setOnes();
  out.push_back(std::move(same));
  return out;
}

LocalSearchResult local_search(const Space& space, const Tuple& start, Direction direction,
                               ConstantKind kind, const OptimizerConfig& cfg, std::uint64_t stream) {
  Tuple x = start;
  if (!retract(space, kind, cfg.plain_domain, x)) {
    throw DegenerateInput("local search start cannot be mapped onto the feasible set");
  }
  if (space.exponent().is_smooth()) return smooth_search(space, std::move(x), direction, kind, cfg);
  return polyhedral_search(space, std::move(x), direction, kind, cfg, stream);
}

ConstantEstimate enumerate_extreme(const Space& space, int n, ConstantKind kind,
                                   const OptimizerConfig& cfg) {
  check_tuple_size(n, cfg.max_n);
  if (kind != ConstantKind::upper_modified) {
    throw UnsupportedExponent("vertex enumeration is exact only for the upper modified constant");
  }
  if (!space.exponent().is_polyhedral()) {
    throw UnsupportedExponent("vertex enumeration needs p = 1 or p = inf, got p = " +
                              space.exponent().to_string());
  }
  const std::uint64_t total = enumeration_size(space, n);
  if (total == 0 || total > cfg.enumeration_budget) {
    throw BudgetExceeded("vertex enumeration of " + space.to_string() + " with n = " +
                         std::to_string(n) + " exceeds the budget of " +
                         std::to_string(cfg.enumeration_budget) + " tuples");
  }

  // One vertex per antipodal pair; C^(n) is invariant under x_j -> -x_j.
  const auto vertices = *extreme_points(space);
  std::vector<Vector> reps;
  for (std::size_t k = 0; k < vertices.size(); k += space.exponent().is_infinite() ? 1 : 2) {
    if (space.exponent().is_infinite() && vertices[k](0) < 0) continue;
    reps.push_back(vertices[k]);
  }
  const auto m = static_cast<std::uint64_t>(reps.size());

  ConstantEstimate est;
  est.kind = kind;
  est.method = Method::extreme_enumeration;
  est.bound_status = BoundStatus::exact;
  est.seed = cfg.seed;
  est.value = -1.0;

  // Seeded tuples go first so that, among equal maxima, the known extremal
  // tuple is the one reported.
  const auto seeds = seeded_candidates(space, n);
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const double v = evaluate_cn(space, seeds[s], cfg.max_n);
    if (s == 0 || beats(v, est.value, Direction::ascend)) {
      est.value = v;
      est.certificate = seeds[s];
      est.best_index = -static_cast<std::int64_t>(seeds.size() - s);
    }
  }

  Tuple t(space.dim(), n);
  std::vector<std::uint64_t> digit(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) t.col(j) = reps[0];
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const double v = evaluate_cn(space, t, cfg.max_n);
    if (beats(v, est.value, Direction::ascend)) {
      est.value = v;
      est.certificate = t;
      est.best_index = static_cast<std::int64_t>(idx);
    }
    // Mixed-radix increment, last argument fastest.
    for (int j = n - 1; j >= 0; --j) {
      auto& dj = digit[static_cast<std::size_t>(j)];
      if (++dj < m) {
        t.col(j) = reps[dj];
        break;
      }
      dj = 0;
      t.col(j) = reps[0];
    }
  }
  est.iterations_total = static_cast<std::int64_t>(total);
  return est;
}

ConstantEstimate estimate_constant(const Space& space, int n, ConstantKind kind,
                                   const OptimizerConfig& cfg) {
  cfg.validate();
  check_tuple_size(n, cfg.max_n);

  if (cfg.method == MethodChoice::enumerate) return enumerate_extreme(space, n, kind, cfg);
  if (cfg.method == MethodChoice::automatic && kind == ConstantKind::upper_modified &&
      space.exponent().is_polyhedral()) {
    const std::uint64_t total = enumeration_size(space, n);
    if (total != 0 && total <= cfg.enumeration_budget) return enumerate_extreme(space, n, kind, cfg);
  }

  const Direction dir = direction_of(kind);
  std::vector<Tuple> starts = seeded_candidates(space, n);
  for (auto& s : starts) retract(space, kind, cfg.plain_domain, s);
  const auto seed_count = static_cast<std::int64_t>(starts.size());

  ConstantEstimate est;
  est.kind = kind;
  est.seed = cfg.seed;
  est.bound_status = is_upper(kind) ? BoundStatus::lower_bound_of_sup : BoundStatus::upper_bound_of_inf;

  if (cfg.method == MethodChoice::seeds_only) {
    est.method = Method::seeded_candidates_only;
    for (std::int64_t i = 0; i < seed_count; ++i) {
      const double v = evaluate_cn(space, starts[static_cast<std::size_t>(i)], cfg.max_n);
      if (i == 0 || beats(v, est.value, dir)) {
        est.value = v;
        est.certificate = starts[static_cast<std::size_t>(i)];
        est.best_index = i - seed_count;
      }
    }
    return est;
  }

  est.method = Method::multistart_gradient;
  for (int r = 0; r < cfg.restarts; ++r) {
    starts.push_back(random_start(space, n, kind, cfg, start_seed(cfg.seed, static_cast<std::uint64_t>(r))));
  }

  std::vector<LocalSearchResult> results(starts.size());
  std::vector<std::exception_ptr> errors(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < starts.size(); i = next++) {
      const std::uint64_t stream = start_seed(cfg.seed ^ 0xa5a5a5a5a5a5a5a5ULL, i);
      try {
        results[i] = local_search(space, starts[i], dir, kind, cfg, stream);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(resolve_threads(cfg.threads), static_cast<int>(starts.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    est.iterations_total += results[i].iterations;
    if (i == 0 || beats(results[i].value, est.value, dir)) {
      est.value = results[i].value;
      est.certificate = results[i].tuple;
      est.best_index = static_cast<std::int64_t>(i) - seed_count;
    }
  }
  est.restarts_used = cfg.restarts;
  return est;
}

}  // namespace njc
