#pragma once

#include <optional>
#include <random>
#include <vector>

#include "njc/types.hpp"

namespace njc {

namespace detail {

// p-norm of a dense expression. Coordinates are rescaled by the largest
// magnitude before raising to the p-th power, so tiny or huge entries do not
// underflow or overflow on the way.
template <typename Derived>
typename Derived::Scalar pnorm(const Exponent& p,
                               const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::pow;
  using std::sqrt;
  if (v.size() == 0) return Scalar(0);
  const Scalar scale = v.cwiseAbs().maxCoeff();
  if (p.is_infinite() || scale == Scalar(0)) return scale;
  CompensatedSum<Scalar> acc;
  const double pv = p.value();
  if (pv == 1.0) {
    for (Index i = 0; i < v.size(); ++i) acc.add(abs(v(i)));
    return acc.value();
  }
  if (pv == 2.0) {
    for (Index i = 0; i < v.size(); ++i) {
      const Scalar r = v(i) / scale;
      acc.add(r * r);
    }
    return scale * sqrt(acc.value());
  }
  const Scalar ps(pv);
  for (Index i = 0; i < v.size(); ++i) acc.add(pow(abs(v(i)) / scale, ps));
  return scale * pow(acc.value(), Scalar(1) / ps);
}

template <typename Derived>
void check_dim(const Space& space, const Eigen::MatrixBase<Derived>& v) {
  if (v.rows() != space.dim()) {
    throw DimensionMismatch("vector has " + std::to_string(v.rows()) +
                            " coordinates, space has dimension " +
                            std::to_string(space.dim()));
  }
}

}  // namespace detail

// ||v||_p for a vector (or each column expression) of the space.
template <typename Derived>
typename Derived::Scalar norm(const Space& space,
                              const Eigen::MatrixBase<Derived>& v) {
  detail::check_dim(space, v);
  if (v.cols() != 1) throw DimensionMismatch("norm expects a column vector");
  return detail::pnorm(space.exponent(), v);
}

// The dual of l_d^p is l_d^q with 1/p + 1/q = 1.
inline Space dual_space(const Space& space) {
  return Space(space.exponent().conjugate(), space.dim());
}

template <typename Derived>
VectorX<typename Derived::Scalar> project_to_sphere(
    const Space& space, const Eigen::MatrixBase<Derived>& v) {
  const auto r = norm(space, v);
  if (r == 0) throw DegenerateInput("cannot project the zero vector onto the sphere");
  return v / r;
}

// Gaussian direction pushed onto the unit sphere. Not uniform on the p-sphere
// for p != 2, but it charges every open subset of it.
template <typename Rng>
Vector sample_sphere(const Space& space, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(space.dim());
  do {
    for (Index i = 0; i < v.size(); ++i) v(i) = gauss(rng);
  } while (v.cwiseAbs().maxCoeff() == 0.0);
  return project_to_sphere(space, v);
}

Vector sample_sphere(const Space& space, std::uint64_t seed);

// Vertices of the unit ball when it is a polytope: the 2d vectors +-e_i for
// p = 1 and the 2^d sign vectors for p = inf. Returns nullopt for 1 < p < inf.
// Order: +e_0, -e_0, +e_1, ... for p = 1; binary counting with bit i of the
// index negating coordinate i for p = inf.
std::optional<std::vector<Vector>> extreme_points(const Space& space);

// (sum_j ||x_j||^2)^(1/2), the norm of l_n^2(X).
template <typename Derived>
typename Derived::Scalar tuple_l2x_norm(const Space& space,
                                        const Eigen::MatrixBase<Derived>& t) {
  using Scalar = typename Derived::Scalar;
  detail::check_dim(space, t);
  CompensatedSum<Scalar> acc;
  for (Index j = 0; j < t.cols(); ++j) {
    const Scalar r = detail::pnorm(space.exponent(), t.col(j));
    acc.add(r * r);
  }
  using std::sqrt;
  return sqrt(acc.value());
}

}  // namespace njc
