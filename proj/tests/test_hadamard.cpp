#include <doctest.h>

#include <random>

#include "njc/functional.hpp"
#include "njc/hadamard.hpp"
#include "njc/operator_norm.hpp"
#include "njc/space.hpp"
#include "oracle.hpp"

using namespace njc;

TEST_CASE("A_2 and A_3") {
  const SignMatrix a2(2);
  CHECK(a2.cast<int>() == (Eigen::MatrixXi(2, 2) << 1, 1, 1, -1).finished());
  const SignMatrix a3(3);
  CHECK(a3.cast<int>() ==
        (Eigen::MatrixXi(4, 3) << 1, 1, 1, 1, -1, 1, 1, 1, -1, 1, -1, -1).finished());
}

TEST_CASE("rows follow the binary sign-pattern order") {
  for (int n = 2; n <= 10; ++n) {
    const SignMatrix a(n);
    REQUIRE(a.rows() == (Index{1} << (n - 1)));
    for (Index k = 0; k < a.rows(); ++k) {
      for (int j = 0; j < n; ++j) CHECK(a(k, j) == oracle::sign_entry(static_cast<std::uint32_t>(k), j));
    }
  }
}

TEST_CASE("Gram identity in integers") {
  for (int n = 2; n <= 12; ++n) {
    const auto g = SignMatrix(n).gram();
    const std::int64_t scale = std::int64_t{1} << (n - 1);
    CHECK(g == (scale * SignMatrix::Gram::Identity(n, n)));
  }
}

TEST_CASE("pseudo-inverse recovers vectors") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int n = 2; n <= 8; ++n) {
    const Eigen::MatrixXd a = SignMatrix(n).cast<double>();
    for (int k = 0; k < 50; ++k) {
      Vector v(n);
      for (int i = 0; i < n; ++i) v(i) = g(rng);
      const Vector back = a.transpose() * (a * v) / std::ldexp(1.0, n - 1);
      CHECK((back - v).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("T_n lists the signed sums and scales norms by C^(n)") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(3.0), Exponent::infinity()}) {
    const Space s(p, 3);
    for (int n = 2; n <= 4; ++n) {
      const SignMatrix a(n);
      Tuple t(3, n);
      for (Index i = 0; i < t.size(); ++i) t.data()[i] = g(rng);
      const Tuple img = apply_tn(s, a, t);
      REQUIRE(img.cols() == a.rows());
      for (Index k = 0; k < a.rows(); ++k) {
        Vector v = t.col(0);
        for (int j = 1; j < n; ++j) v += oracle::sign_entry(static_cast<std::uint32_t>(k), j) * t.col(j);
        CHECK((img.col(k) - v).cwiseAbs().maxCoeff() <= 1e-13);
      }
      const double lhs = std::pow(tuple_l2x_norm(s, img), 2);
      const double rhs = std::ldexp(1.0, n - 1) * evaluate_cn(s, t) * std::pow(tuple_l2x_norm(s, t), 2);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(apply_tn(Space(Exponent(2.0), 3), SignMatrix(3), Tuple(Tuple::Ones(3, 2))),
                  DimensionMismatch);
}

TEST_CASE("columns of A_n are extremal in l^inf") {
  for (int n = 2; n <= 6; ++n) {
    const Tuple z = extremal_linf_tuple(n);
    const Space s(Exponent::infinity(), z.rows());
    for (int j = 0; j < n; ++j) CHECK(norm(s, Vector(z.col(j))) == 1.0);
    CHECK(evaluate_cn(s, z) == doctest::Approx(double(n)).epsilon(1e-15));
  }
}

TEST_CASE("operator norm of T_n on l_n^2(l^2)") {
  OptimizerConfig cfg;
  cfg.restarts = 10;
  for (int n = 2; n <= 3; ++n) {
    const auto est = operator_norm_tn(Space(Exponent(2.0), 4), n, cfg);
    CHECK(est.value * est.value / std::ldexp(1.0, n - 1) == doctest::Approx(1.0).epsilon(1e-10));
  }
}
