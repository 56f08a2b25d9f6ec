#pragma once

#include "njc/hadamard.hpp"
#include "njc/optimizer.hpp"

namespace njc {

// Estimate of ||T_n|| = sup { ||A_n t||_{l^2(X)} : t in S(l_n^2(X)) }.
// The search is the upper-constant search on its own seed stream; the value
// is recomputed through the matrix product at the normalized certificate, so
// value^2 / 2^(n-1) is an independent route to the upper constant.
// `value` here is the operator norm, not a C^(n) value.
ConstantEstimate operator_norm_tn(const Space& space, int n, const OptimizerConfig& cfg);

}  // namespace njc
