#pragma once

#include <cstdint>

#include "njc/types.hpp"

namespace njc {

// The 2^(n-1) x n matrix of signs built by
//   A_2 = [[1, 1], [1, -1]],   A_n = [[A_{n-1}, 1], [A_{n-1}, -1]].
// Row k lists the pattern (1, theta_2, ..., theta_n) with index k, so the
// rows run over {+1} x {+-1}^(n-1) exactly once.
class SignMatrix {
 public:
  using Entries = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;
  using Gram = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

  explicit SignMatrix(int n);

  int n() const { return n_; }
  Index rows() const { return entries_.rows(); }
  const Entries& entries() const { return entries_; }
  std::int8_t operator()(Index i, Index j) const { return entries_(i, j); }

  // A^T A, which equals 2^(n-1) I_n.
  Gram gram() const;

  template <typename Scalar = double>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> cast() const {
    return entries_.template cast<Scalar>();
  }

 private:
  int n_;
  Entries entries_;
};

inline SignMatrix sign_matrix(int n) { return SignMatrix(n); }

// T_n t = A_n t: column i of the result is sum_j a_ij x_j. The result is a
// tuple of 2^(n-1) vectors of the same space.
Tuple apply_tn(const Space& space, const SignMatrix& m, const Tuple& t);

// The columns z_j of A_n as vectors of l^inf_{2^(n-1)}. Each has sup-norm 1
// and C^(n)(z_1, ..., z_n) = n.
Tuple extremal_linf_tuple(int n);

}  // namespace njc
