#pragma once

#include <cstdint>
#include <string>

#include "njc/kinds.hpp"
#include "njc/types.hpp"

namespace njc {

// A known value of one constant for l_d^p, or an interval [lo, hi] when only
// two-sided bounds are known.
struct ClosedFormValue {
  double lo = 0.0;
  double hi = 0.0;
  ConstantKind kind = ConstantKind::upper;
  // Dimension condition that was checked, e.g. "dim >= 2^(n-1)".
  std::string applicability;
  // Which result supplies the value.
  std::string provenance;

  bool is_point() const { return lo == hi; }
  double value() const { return lo; }
  bool contains(double x, double tol) const { return x >= lo - tol && x <= hi + tol; }
};

// Exact binomial coefficient, valid for n <= 62.
std::uint64_t binomial(int n, int k);

// sum_{k=0}^{floor(n/2)} C(n,k) (n-2k)^p for integer p, exact. The Rademacher
// moment is this value divided by 2^(n-1).
std::uint64_t rademacher_moment_numerator(int n, int p);

// E|r_1 + ... + r_n|^p = 2^(1-n) sum_{k<=n/2} C(n,k) (n-2k)^p.
double rademacher_moment(int n, double p);
double rademacher_moment(int n, const Exponent& p);

// Upper modified constant of l^p / L^p:
//   n^(2/p-1)                                   for 1 <= p <= 2, dim >= n
//   n^-1 (2^(1-n) sum C(n,k)(n-2k)^p)^(2/p)     for 2 < p < inf, dim >= 2^(n-1)
//   n                                           for p = inf,     dim >= 2^(n-1)
ClosedFormValue upper_modified_lp(int n, const Exponent& p, Index dim);

// Upper (plain) constant: n^(2/p-1) for p <= 2, n for p = inf, and for
// 2 < p < inf only the interval [upper_modified_lp, min(n^(2/q-1), B_p^2)].
ClosedFormValue upper_nj_lp(int n, const Exponent& p, Index dim);

// Lower (plain) constant n^(2/p-1) for 2 <= p <= inf, dim >= n.
ClosedFormValue lower_nj_lp(int n, const Exponent& p, Index dim);

// Lower modified constant where it is known: 1 for p = 2, 1/n for p = inf
// (dim >= n). Throws NoClosedForm otherwise.
ClosedFormValue lower_modified_lp(int n, const Exponent& p, Index dim);

// Dispatches to one of the four functions above.
ClosedFormValue closed_form(ConstantKind kind, int n, const Exponent& p, Index dim);

// Clarkson's value 2^(2/min(p,q) - 1) of the classical NJ constant of L^p.
double clarkson_cnj(const Exponent& p);

// Haagerup's best Khintchine constant B_p = sqrt(2) (Gamma((p+1)/2)/sqrt(pi))^(1/p), p >= 2.
double haagerup_bp(double p);

// (1/(n 2^(n-1))) sum_j C(n-1,j)(n-2j)^2, computed in integers. Always 1.
double identity_tuple_value(int n);

}  // namespace njc
