#pragma once

#include <cstdint>
#include <vector>

#include "njc/space.hpp"

namespace njc {

// Signs (theta_1, ..., theta_n) with theta_1 = +1. Pattern k negates x_{j+1}
// (0-based j >= 1) exactly when bit j-1 of k is set, so the patterns come out
// in binary counting order and pattern k is row k of the sign matrix A_n.
class SignPattern {
 public:
  SignPattern(int n, std::uint32_t index) : n_(n), index_(index) {}

  int size() const { return n_; }
  std::uint32_t index() const { return index_; }

  int operator[](int j) const {
    if (j == 0) return 1;
    return (index_ >> (j - 1)) & 1U ? -1 : 1;
  }

  std::vector<int> signs() const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(j)] = (*this)[j];
    return out;
  }

  friend bool operator==(const SignPattern& a, const SignPattern& b) {
    return a.n_ == b.n_ && a.index_ == b.index_;
  }

 private:
  int n_;
  std::uint32_t index_;
};

inline void check_tuple_size(Index n, int max_n = kDefaultMaxN) {
  if (n < 2 || n > max_n) {
    throw OutOfRange("tuple length n = " + std::to_string(n) + " outside [2, " +
                     std::to_string(max_n) + "]");
  }
}

std::vector<SignPattern> sign_patterns(int n, int max_n = kDefaultMaxN);

namespace detail {

inline std::uint32_t pattern_count(Index n) {
  return std::uint32_t{1} << static_cast<unsigned>(n - 1);
}

// out = x_1 + sum_{j>=2} theta_j x_j for pattern `mask`.
template <typename Derived, typename Out>
void signed_combination(const Eigen::MatrixBase<Derived>& t, std::uint32_t mask,
                        Out& out) {
  out = t.col(0);
  for (Index j = 1; j < t.cols(); ++j) {
    if ((mask >> (j - 1)) & 1U) {
      out -= t.col(j);
    } else {
      out += t.col(j);
    }
  }
}

template <typename Derived>
typename Derived::Scalar sum_sq_norms(const Space& space,
                                      const Eigen::MatrixBase<Derived>& t) {
  using Scalar = typename Derived::Scalar;
  CompensatedSum<Scalar> acc;
  for (Index j = 0; j < t.cols(); ++j) {
    const Scalar r = pnorm(space.exponent(), t.col(j));
    acc.add(r * r);
  }
  return acc.value();
}

// Gradient of v -> ||v||_p^2 for 1 < p < inf. For p < 2 and a vector with a
// zero coordinate the smoothed norm (sum (v_i^2 + eps^2)^(p/2))^(1/p) is
// differentiated instead.
template <typename Scalar>
VectorX<Scalar> grad_sq_norm(const Exponent& p, const VectorX<Scalar>& v,
                             Scalar eps) {
  using std::abs;
  using std::pow;
  const Scalar pv(p.value());
  VectorX<Scalar> g(v.size());
  const Scalar scale = v.cwiseAbs().maxCoeff();
  const bool has_zero = (v.cwiseAbs().array() <= eps).any();
  if (pv < Scalar(2) && has_zero) {
    CompensatedSum<Scalar> acc;
    for (Index i = 0; i < v.size(); ++i) acc.add(pow(v(i) * v(i) + eps * eps, pv / 2));
    const Scalar smoothed = pow(acc.value(), Scalar(1) / pv);
    for (Index i = 0; i < v.size(); ++i) {
      g(i) = 2 * pow(smoothed, 2 - pv) * pow(v(i) * v(i) + eps * eps, pv / 2 - 1) * v(i);
    }
    return g;
  }
  if (scale == Scalar(0)) return VectorX<Scalar>::Zero(v.size());
  const VectorX<Scalar> w = v / scale;
  const Scalar wn = pnorm(p, w);
  for (Index i = 0; i < v.size(); ++i) {
    const Scalar a = abs(w(i));
    const Scalar s = w(i) > 0 ? Scalar(1) : (w(i) < 0 ? Scalar(-1) : Scalar(0));
    g(i) = 2 * scale * pow(wn, 2 - pv) * pow(a, pv - 1) * s;
  }
  return g;
}

}  // namespace detail

// C^(n)(x_1..x_n) = sum_theta ||x_1 + sum theta_j x_j||^2 / (2^(n-1) sum ||x_j||^2)
// over the 2^(n-1) patterns with theta_1 = +1. Always lies in [1/n, n].
template <typename Derived>
typename Derived::Scalar evaluate_cn(const Space& space,
                                     const Eigen::MatrixBase<Derived>& t,
                                     int max_n = kDefaultMaxN) {
  using Scalar = typename Derived::Scalar;
  detail::check_dim(space, t);
  check_tuple_size(t.cols(), max_n);
  const Scalar denom = detail::sum_sq_norms(space, t);
  if (denom == Scalar(0)) throw DegenerateInput("C^(n) of the all-zero tuple is undefined");
  const std::uint32_t count = detail::pattern_count(t.cols());
  CompensatedSum<Scalar> num;
  VectorX<Scalar> v(t.rows());
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    detail::signed_combination(t, mask, v);
    const Scalar r = detail::pnorm(space.exponent(), v);
    num.add(r * r);
  }
  return num.value() / (Scalar(count) * denom);
}

// Same ratio written over all 2^n sign choices: sum ||sum theta_j x_j||^2 / (2^n sum ||x_j||^2).
// Each +-pair is counted twice, so it agrees with evaluate_cn.
template <typename Derived>
typename Derived::Scalar evaluate_cn_symmetrized(const Space& space,
                                                 const Eigen::MatrixBase<Derived>& t,
                                                 int max_n = kDefaultMaxN) {
  using Scalar = typename Derived::Scalar;
  detail::check_dim(space, t);
  check_tuple_size(t.cols(), max_n);
  const Scalar denom = detail::sum_sq_norms(space, t);
  if (denom == Scalar(0)) throw DegenerateInput("C^(n) of the all-zero tuple is undefined");
  const std::uint64_t count = std::uint64_t{1} << static_cast<unsigned>(t.cols());
  CompensatedSum<Scalar> num;
  VectorX<Scalar> v(t.rows());
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    v.setZero();
    for (Index j = 0; j < t.cols(); ++j) {
      if ((mask >> j) & 1U) {
        v -= t.col(j);
      } else {
        v += t.col(j);
      }
    }
    const Scalar r = detail::pnorm(space.exponent(), v);
    num.add(r * r);
  }
  return num.value() / (Scalar(count) * denom);
}

template <typename Scalar>
struct SignedMinimum {
  Scalar value;
  SignPattern pattern;
};

// min over theta of ||x_1 + sum theta_j x_j||, first minimizer in pattern order.
template <typename Derived>
SignedMinimum<typename Derived::Scalar> min_sign_combination(
    const Space& space, const Eigen::MatrixBase<Derived>& t,
    int max_n = kDefaultMaxN) {
  using Scalar = typename Derived::Scalar;
  detail::check_dim(space, t);
  check_tuple_size(t.cols(), max_n);
  const int n = static_cast<int>(t.cols());
  const std::uint32_t count = detail::pattern_count(t.cols());
  VectorX<Scalar> v(t.rows());
  SignedMinimum<Scalar> best{Scalar(0), SignPattern(n, 0)};
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    detail::signed_combination(t, mask, v);
    const Scalar r = detail::pnorm(space.exponent(), v);
    if (mask == 0 || r < best.value) best = {r, SignPattern(n, mask)};
  }
  return best;
}

// d C^(n) / d x_j for every j, by the quotient rule on numerator and
// denominator. Only defined for 1 < p < inf.
template <typename Derived>
TupleX<typename Derived::Scalar> grad_cn(const Space& space,
                                         const Eigen::MatrixBase<Derived>& t,
                                         double smoothing = 1e-12,
                                         int max_n = kDefaultMaxN) {
  using Scalar = typename Derived::Scalar;
  if (space.exponent().is_polyhedral()) {
    throw UnsupportedExponent("grad_cn needs 1 < p < inf, got p = " +
                              space.exponent().to_string());
  }
  detail::check_dim(space, t);
  check_tuple_size(t.cols(), max_n);
  const Exponent& p = space.exponent();
  const Scalar eps(smoothing);
  const Index n = t.cols();
  const std::uint32_t count = detail::pattern_count(n);

  CompensatedSum<Scalar> num_acc;
  TupleX<Scalar> dnum = TupleX<Scalar>::Zero(t.rows(), n);
  VectorX<Scalar> v(t.rows());
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    detail::signed_combination(t, mask, v);
    const Scalar r = detail::pnorm(p, v);
    num_acc.add(r * r);
    const VectorX<Scalar> g = detail::grad_sq_norm(p, v, eps);
    dnum.col(0) += g;
    for (Index j = 1; j < n; ++j) {
      if ((mask >> (j - 1)) & 1U) {
        dnum.col(j) -= g;
      } else {
        dnum.col(j) += g;
      }
    }
  }
  const Scalar num = num_acc.value();
  const Scalar denom = detail::sum_sq_norms(space, t);
  if (denom == Scalar(0)) throw DegenerateInput("C^(n) of the all-zero tuple is undefined");

  TupleX<Scalar> grad(t.rows(), n);
  for (Index j = 0; j < n; ++j) {
    const VectorX<Scalar> xj = t.col(j);
    const VectorX<Scalar> dden = detail::grad_sq_norm(p, xj, eps);
    grad.col(j) = (dnum.col(j) * denom - num * dden) / (Scalar(count) * denom * denom);
  }
  return grad;
}

}  // namespace njc
