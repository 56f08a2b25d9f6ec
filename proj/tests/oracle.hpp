#pragma once

// Straightforward reference implementations used as test oracles. They share
// no code with the library: plain loops, long double, std::pow.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<long double>;
using Cols = std::vector<Vec>;

constexpr long double kInf = std::numeric_limits<long double>::infinity();

inline long double norm(long double p, const Vec& v) {
  if (std::isinf(p)) {
    long double m = 0;
    for (auto x : v) m = std::max(m, std::fabs(x));
    return m;
  }
  long double s = 0;
  for (auto x : v) s += std::pow(std::fabs(x), p);
  return std::pow(s, 1 / p);
}

// sum over theta in {+-1}^(n-1) of ||x_1 + sum theta_j x_j||^2 over
// 2^(n-1) sum ||x_j||^2, by explicit recursion over the signs.
inline long double cn(long double p, const Cols& x) {
  const std::size_t n = x.size();
  const std::size_t d = x[0].size();
  long double num = 0;
  Vec acc(d);
  auto rec = [&](auto&& self, std::size_t j, Vec cur) -> void {
    if (j == n) {
      const long double r = norm(p, cur);
      num += r * r;
      return;
    }
    Vec plus = cur, minus = cur;
    for (std::size_t i = 0; i < d; ++i) {
      plus[i] += x[j][i];
      minus[i] -= x[j][i];
    }
    self(self, j + 1, plus);
    self(self, j + 1, minus);
  };
  rec(rec, 1, x[0]);
  long double den = 0;
  for (const auto& c : x) {
    const long double r = norm(p, c);
    den += r * r;
  }
  return num / (std::ldexp(1.0L, static_cast<int>(n) - 1) * den);
}

inline long double min_signed(long double p, const Cols& x) {
  const std::size_t n = x.size();
  long double best = kInf;
  for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
    Vec v = x[0];
    for (std::size_t j = 1; j < n; ++j) {
      const long double s = (mask >> (j - 1)) & 1U ? -1 : 1;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * x[j][i];
    }
    best = std::min(best, norm(p, v));
  }
  return best;
}

// Entry (k, j) of the sign matrix read off the binary digits of k.
inline int sign_entry(std::uint32_t k, int j) { return j == 0 ? 1 : (((k >> (j - 1)) & 1U) ? -1 : 1); }

// sum over all 2^n sign vectors r of |r_1 + ... + r_n|^p, exact for integer p.
inline std::uint64_t rademacher_power_sum(int n, int p) {
  std::uint64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int ones = __builtin_popcountll(mask);
    std::uint64_t s = static_cast<std::uint64_t>(std::abs(n - 2 * ones));
    std::uint64_t term = 1;
    for (int i = 0; i < p; ++i) term *= s;
    total += term;
  }
  return total;
}

inline Cols random_cols(std::mt19937_64& rng, std::size_t d, std::size_t n) {
  std::normal_distribution<double> g;
  Cols x(n, Vec(d));
  for (auto& c : x) {
    for (auto& v : c) v = g(rng);
  }
  return x;
}

}  // namespace oracle
