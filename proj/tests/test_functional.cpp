#include <doctest.h>

#include <algorithm>
#include <random>

#include "njc/functional.hpp"
#include "njc/space.hpp"
#include "oracle.hpp"

using namespace njc;

namespace {

oracle::Cols to_oracle(const Tuple& t) {
  oracle::Cols c(t.cols(), oracle::Vec(t.rows()));
  for (Index j = 0; j < t.cols(); ++j) {
    for (Index i = 0; i < t.rows(); ++i) c[j][i] = t(i, j);
  }
  return c;
}

long double oracle_p(const Exponent& p) { return p.is_infinite() ? oracle::kInf : p.value(); }

const std::vector<Exponent>& exponents() {
  static const std::vector<Exponent> ps{Exponent(1.0), Exponent(1.5), Exponent(2.0),
                                        Exponent(3.0), Exponent::infinity()};
  return ps;
}

Tuple random_tuple(std::mt19937_64& rng, Index d, int n) {
  std::normal_distribution<double> g;
  Tuple t(d, n);
  for (Index j = 0; j < n; ++j) {
    const double scale = std::exp(g(rng));
    for (Index i = 0; i < d; ++i) t(i, j) = scale * g(rng);
  }
  return t;
}

}  // namespace

TEST_CASE("sign patterns run over {+1} x {+-1}^(n-1) in binary order") {
  const auto pats = sign_patterns(4);
  REQUIRE(pats.size() == 8);
  for (std::uint32_t k = 0; k < 8; ++k) {
    CHECK(pats[k].index() == k);
    for (int j = 0; j < 4; ++j) CHECK(pats[k][j] == oracle::sign_entry(k, j));
  }
  CHECK_THROWS_AS(sign_patterns(1), OutOfRange);
  CHECK_THROWS_AS(sign_patterns(21), OutOfRange);
}

TEST_CASE("C^(n) matches the recursive reference") {
  std::mt19937_64 rng(1);
  for (const auto& p : exponents()) {
    for (int n = 2; n <= 5; ++n) {
      for (Index d : {1, 3, 4}) {
        const Space s(p, d);
        for (int k = 0; k < 10; ++k) {
          const Tuple t = random_tuple(rng, d, n);
          const double ref = double(oracle::cn(oracle_p(p), to_oracle(t)));
          CHECK(evaluate_cn(s, t) == doctest::Approx(ref).epsilon(1e-12));
          CHECK(evaluate_cn_symmetrized(s, t) == doctest::Approx(ref).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("C^(n) is invariant under scaling, column permutations and column signs") {
  std::mt19937_64 rng(2);
  for (const auto& p : exponents()) {
    const Space s(p, 3);
    for (int k = 0; k < 30; ++k) {
      Tuple t = random_tuple(rng, 3, 4);
      const double c = evaluate_cn(s, t);
      CHECK(evaluate_cn(s, Tuple(t * 1e-7)) == doctest::Approx(c).epsilon(1e-12));
      CHECK(evaluate_cn(s, Tuple(-3.0 * t)) == doctest::Approx(c).epsilon(1e-12));
      Tuple perm = t;
      perm.col(0).swap(perm.col(2));
      perm.col(1).swap(perm.col(3));
      CHECK(evaluate_cn(s, perm) == doctest::Approx(c).epsilon(1e-12));
      Tuple flipped = t;
      flipped.col(1) *= -1;
      flipped.col(0) *= -1;
      CHECK(evaluate_cn(s, flipped) == doctest::Approx(c).epsilon(1e-12));
    }
  }
}

TEST_CASE("1/n <= C^(n) <= n with the extremes attained") {
  std::mt19937_64 rng(3);
  for (const auto& p : exponents()) {
    for (int n = 2; n <= 4; ++n) {
      const Space s(p, 3);
      // 5 exponents x 3 lengths x 6700 = 100500 tuples.
      int bad = 0;
      for (int k = 0; k < 6700; ++k) {
        const double c = evaluate_cn(s, random_tuple(rng, 3, n));
        if (c < 1.0 / n - 1e-12 || c > n + 1e-12) ++bad;
      }
      CHECK(bad == 0);
    }
  }
  // (e_1, ..., e_n) in l^inf attains 1/n; the rows of A_n attain n.
  const Space linf(Exponent::infinity(), 4);
  CHECK(evaluate_cn(linf, Tuple(Tuple::Identity(4, 3))) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  Tuple z(4, 3);
  for (Index i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) z(i, j) = oracle::sign_entry(static_cast<std::uint32_t>(i), j);
  }
  CHECK(evaluate_cn(linf, z) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("identical tuples give exactly 1") {
  std::mt19937_64 rng(4);
  for (const auto& p : exponents()) {
    const Space s(p, 5);
    for (int n = 2; n <= 8; ++n) {
      const Vector x = sample_sphere(s, rng) * 17.0;
      Tuple t(5, n);
      for (int j = 0; j < n; ++j) t.col(j) = x;
      CHECK(std::abs(evaluate_cn(s, t) - 1.0) <= 1e-13);
    }
  }
}

TEST_CASE("Hilbert space: C^(n) = 1 for every tuple") {
  std::mt19937_64 rng(5);
  const Space s(Exponent(2.0), 4);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 100; ++k) CHECK(std::abs(evaluate_cn(s, random_tuple(rng, 4, n)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("degenerate and mismatched tuples") {
  const Space s(Exponent(2.0), 2);
  CHECK_THROWS_AS(evaluate_cn(s, Tuple(Tuple::Zero(2, 3))), DegenerateInput);
  CHECK_THROWS_AS(evaluate_cn(s, Tuple(Tuple::Ones(3, 3))), DimensionMismatch);
  CHECK_THROWS_AS(evaluate_cn(s, Tuple(Tuple::Ones(2, 1))), OutOfRange);
  Tuple partial = Tuple::Zero(2, 3);
  partial(0, 1) = 1.0;
  CHECK(evaluate_cn(s, partial) == doctest::Approx(1.0));
}

TEST_CASE("min_sign_combination agrees with brute force") {
  std::mt19937_64 rng(6);
  for (const auto& p : exponents()) {
    const Space s(p, 3);
    for (int n = 2; n <= 5; ++n) {
      for (int k = 0; k < 20; ++k) {
        const Tuple t = random_tuple(rng, 3, n);
        const auto m = min_sign_combination(s, t);
        CHECK(m.value == doctest::Approx(double(oracle::min_signed(oracle_p(p), to_oracle(t)))).epsilon(1e-12));
        Vector v = t.col(0);
        for (int j = 1; j < n; ++j) v += m.pattern[j] * t.col(j);
        CHECK(norm(s, v) == doctest::Approx(m.value).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("gradient against central differences") {
  std::mt19937_64 rng(8);
  for (double pv : {1.5, 3.0, 5.0}) {
    const Space s(Exponent(pv), 3);
    for (int n = 2; n <= 3; ++n) {
      for (int k = 0; k < 20; ++k) {
        const Tuple t = random_tuple(rng, 3, n);
        const Tuple g = grad_cn(s, t);
        for (Index i = 0; i < t.rows(); ++i) {
          for (Index j = 0; j < t.cols(); ++j) {
            const double h = 1e-6 * std::max(1.0, std::abs(t(i, j)));
            Tuple a = t, b = t;
            a(i, j) += h;
            b(i, j) -= h;
            const double fd = (evaluate_cn(s, a) - evaluate_cn(s, b)) / (2 * h);
            CHECK(g(i, j) == doctest::Approx(fd).epsilon(1e-5).scale(std::max(1.0, g.norm())));
          }
        }
        // C^(n) is 0-homogeneous, so the gradient is orthogonal to t.
        CHECK(std::abs((g.array() * t.array()).sum()) <= 1e-10 * g.norm() * t.norm());
      }
    }
  }
  CHECK_THROWS_AS(grad_cn(Space(Exponent(1.0), 2), Tuple(Tuple::Ones(2, 2))), UnsupportedExponent);
  CHECK_THROWS_AS(grad_cn(Space(Exponent::infinity(), 2), Tuple(Tuple::Ones(2, 2))), UnsupportedExponent);
}

TEST_CASE("gradient is finite on tuples with zero coordinates") {
  const Space s(Exponent(1.5), 3);
  Tuple t(3, 2);
  t << 1, 0, 0, 1, 0, 0;
  const Tuple g = grad_cn(s, t);
  CHECK(g.allFinite());
}

TEST_CASE("evaluation is templated on the scalar") {
  const Space s(Exponent(3.0), 2);
  TupleX<float> tf(2, 2);
  tf << 1, 0.5f, 0, 1;
  TupleX<long double> tl = tf.cast<long double>();
  CHECK(double(evaluate_cn(s, tf)) == doctest::Approx(double(evaluate_cn(s, tl))).epsilon(1e-6));
}

TEST_CASE("symmetrized form is invariant under sign flips and permutations") {
  std::mt19937_64 rng(9);
  for (const auto& p : exponents()) {
    const Space s(p, 3);
    for (int k = 0; k < 50; ++k) {
      const Tuple t = random_tuple(rng, 3, 4);
      const double c = evaluate_cn_symmetrized(s, t);
      std::vector<int> order{0, 1, 2, 3};
      do {
        Tuple u(3, 4);
        for (int j = 0; j < 4; ++j) u.col(j) = t.col(order[j]) * ((k >> j) & 1 ? -1.0 : 1.0);
        CHECK(evaluate_cn_symmetrized(s, u) == doctest::Approx(c).epsilon(1e-12));
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
}

TEST_CASE("parallelogram-type bound on 10^4 random pairs") {
  std::mt19937_64 rng(10);
  for (const auto& p : exponents()) {
    const Space s(p, 4);
    int bad = 0;
    for (int k = 0; k < 10000; ++k) {
      const Tuple t = random_tuple(rng, 4, 2);
      const double a = norm(s, Vector(t.col(0) + t.col(1)));
      const double b = norm(s, Vector(t.col(0) - t.col(1)));
      const double nx = norm(s, Vector(t.col(0)));
      const double ny = norm(s, Vector(t.col(1)));
      const double m = std::max(nx, ny);
      const double lhs = a * a + b * b;
      if (lhs < 2 * m * m * (1 - 1e-12) || 2 * m * m < (nx * nx + ny * ny) * (1 - 1e-12)) ++bad;
    }
    CHECK(bad == 0);
  }
}
