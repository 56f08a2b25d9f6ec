#include "njc/hadamard.hpp"

#include "njc/functional.hpp"
#include "njc/operator_norm.hpp"

namespace njc {

SignMatrix::SignMatrix(int n) : n_(n) {
  check_tuple_size(n);
  entries_.resize(2, 2);
  entries_ << 1, 1, 1, -1;
  for (int k = 3; k <= n; ++k) {
    const Index half = entries_.rows();
    Entries next(2 * half, k);
    next.topLeftCorner(half, k - 1) = entries_;
    next.bottomLeftCorner(half, k - 1) = entries_;
    next.topRightCorner(half, 1).setConstant(1);
    next.bottomRightCorner(half, 1).setConstant(-1);
    entries_ = std::move(next);
  }
}

SignMatrix::Gram SignMatrix::gram() const {
  const Gram a = entries_.cast<std::int64_t>();
  return a.transpose() * a;
}

Tuple apply_tn(const Space& space, const SignMatrix& m, const Tuple& t) {
  detail::check_dim(space, t);
  if (t.cols() != m.n()) {
    throw DimensionMismatch("T_n expects a tuple of " + std::to_string(m.n()) +
                            " vectors, got " + std::to_string(t.cols()));
  }
  return t * m.cast<double>().transpose();
}

Tuple extremal_linf_tuple(int n) { return SignMatrix(n).cast<double>(); }

ConstantEstimate operator_norm_tn(const Space& space, int n, const OptimizerConfig& cfg) {
  const SignMatrix m(n);
  OptimizerConfig search = cfg;
  // Own seed stream, so the search is not a replay of the upper-constant run.
  search.seed = cfg.seed ^ 0x6a09e667f3bcc908ULL;
  ConstantEstimate est = estimate_constant(space, n, ConstantKind::upper, search);

  Tuple x = est.certificate;
  x /= tuple_l2x_norm(space, x);
  const Tuple image = apply_tn(space, m, x);
  est.certificate = x;
  est.value = tuple_l2x_norm(space, image);
  est.seed = search.seed;
  return est;
}

}  // namespace njc
