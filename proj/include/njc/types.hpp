#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "njc/errors.hpp"

namespace njc {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// A tuple (x_1, ..., x_n) of vectors in a d-dimensional space is stored as a
// d x n matrix whose column j is x_j.
template <typename Scalar>
using TupleX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Tuple = TupleX<double>;

// Largest tuple length accepted by default. Work grows like 2^(n-1) * n * d.
inline constexpr int kDefaultMaxN = 20;

// Norm exponent p in [1, inf]. Infinity is a flag, never a large double.
// The conjugate exponent is carried alongside so that dual().dual() gives
// back the identical value.
class Exponent {
 public:
  explicit Exponent(double p) : p_(p), p_inf_(false) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
      throw Error("exponent must be a finite value >= 1 or Exponent::infinity()");
    }
    if (p == 1.0) {
      q_ = 0.0;
      q_inf_ = true;
    } else {
      q_ = p / (p - 1.0);
      q_inf_ = false;
    }
  }

  static Exponent infinity() { return Exponent(0.0, true, 1.0, false); }

  // Accepts "inf", "infinity" or a decimal number.
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return p_inf_; }

  // The finite value of p. Throws for p = inf.
  double value() const {
    if (p_inf_) throw UnsupportedExponent("p = inf has no finite value");
    return p_;
  }

  // 1/p, with 1/inf = 0.
  double reciprocal() const { return p_inf_ ? 0.0 : 1.0 / p_; }

  Exponent conjugate() const { return Exponent(q_, q_inf_, p_, p_inf_); }

  bool is_polyhedral() const { return p_inf_ || p_ == 1.0; }
  bool is_smooth() const { return !is_polyhedral(); }

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    if (a.p_inf_ != b.p_inf_) return false;
    return a.p_inf_ || a.p_ == b.p_;
  }

 private:
  Exponent(double p, bool p_inf, double q, bool q_inf)
      : p_(p), q_(q), p_inf_(p_inf), q_inf_(q_inf) {}

  double p_ = 2.0;
  double q_ = 2.0;
  bool p_inf_ = false;
  bool q_inf_ = false;
};

// The real space R^d with the p-norm.
class Space {
 public:
  Space(Exponent p, Index dim) : p_(p), dim_(dim) {
    if (dim < 1) throw Error("space dimension must be >= 1");
  }
  Space(double p, Index dim) : Space(Exponent(p), dim) {}

  const Exponent& exponent() const { return p_; }
  Index dim() const { return dim_; }

  friend bool operator==(const Space& a, const Space& b) {
    return a.p_ == b.p_ && a.dim_ == b.dim_;
  }

  std::string to_string() const;

 private:
  Exponent p_;
  Index dim_;
};

// Neumaier's variant of Kahan summation.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_ = Scalar(0);
  Scalar comp_ = Scalar(0);
};

}  // namespace njc
