#include "njc/closed_forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include "njc/functional.hpp"

namespace njc {

namespace {

std::string dims(int n, Index dim) {
  return " (got dim = " + std::to_string(dim) + ", n = " + std::to_string(n) + ")";
}

Index half_cube(int n) { return Index{1} << (n - 1); }

void require_n(int n) { check_tuple_size(n, 62); }

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) {
      throw Error("integer overflow in moment numerator");
    }
  }
  return out;
}

ClosedFormValue point(double v, ConstantKind kind, std::string applicability,
                      std::string provenance) {
  return {v, v, kind, std::move(applicability), std::move(provenance)};
}

}  // namespace

std::string to_string(ConstantKind k) {
  switch (k) {
    case ConstantKind::upper: return "upper";
    case ConstantKind::lower: return "lower";
    case ConstantKind::upper_modified: return "upper-modified";
    case ConstantKind::lower_modified: return "lower-modified";
  }
  return "?";
}

ConstantKind parse_kind(std::string_view text) {
  if (text == "upper") return ConstantKind::upper;
  if (text == "lower") return ConstantKind::lower;
  if (text == "upper-modified") return ConstantKind::upper_modified;
  if (text == "lower-modified") return ConstantKind::lower_modified;
  throw Error("unknown constant kind '" + std::string(text) + "'");
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 62) throw OutOfRange("binomial: n outside [0, 62]");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    // c * (n - k + i) is divisible by i at every step.
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    std::uint64_t den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    c = (c / den) * num;
  }
  return c;
}

std::uint64_t rademacher_moment_numerator(int n, int p) {
  if (n < 1 || n > 62) throw OutOfRange("moment: n outside [1, 62]");
  if (p < 0) throw UnsupportedExponent("moment: negative integer exponent");
  std::uint64_t total = 0;
  for (int k = 0; k <= n / 2; ++k) {
    std::uint64_t term = 0;
    if (__builtin_mul_overflow(binomial(n, k),
                               checked_pow(static_cast<std::uint64_t>(n - 2 * k), p), &term) ||
        __builtin_add_overflow(total, term, &total)) {
      throw Error("integer overflow in moment numerator");
    }
  }
  return total;
}

double rademacher_moment(int n, double p) {
  if (n < 1 || n > 62) throw OutOfRange("moment: n outside [1, 62]");
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw UnsupportedExponent("moment needs a finite p >= 1");
  }
  CompensatedSum<double> acc;
  for (int k = 0; k <= n / 2; ++k) {
    acc.add(static_cast<double>(binomial(n, k)) * std::pow(double(n - 2 * k), p));
  }
  return std::ldexp(acc.value(), 1 - n);
}

double rademacher_moment(int n, const Exponent& p) {
  if (p.is_infinite()) throw UnsupportedExponent("moment of order inf");
  return rademacher_moment(n, p.value());
}

ClosedFormValue upper_modified_lp(int n, const Exponent& p, Index dim) {
  require_n(n);
  const auto kind = ConstantKind::upper_modified;
  if (!p.is_infinite() && p.value() == 2.0) {
    return point(1.0, kind, "any dim", "Hilbert space: C^(n) is identically 1");
  }
  if (p.is_infinite()) {
    if (dim < half_cube(n)) {
      throw PreconditionError("upper modified constant of l^inf equals n only for dim >= 2^(n-1)" +
                              dims(n, dim));
    }
    return point(double(n), kind, "dim >= 2^(n-1)",
                 "closed form: l^inf, sign-matrix columns attain n");
  }
  const double pv = p.value();
  if (pv <= 2.0) {
    if (dim < n) {
      throw PreconditionError("upper modified constant n^(2/p-1) for 1 <= p <= 2 requires dim >= n" +
                              dims(n, dim));
    }
    return point(std::pow(double(n), 2.0 / pv - 1.0), kind, "dim >= n",
                 "closed form: l^p upper modified, 1 <= p <= 2");
  }
  if (dim < half_cube(n)) {
    throw PreconditionError(
        "upper modified constant n^-1 (Rademacher moment)^(2/p) for 2 < p < inf requires dim >= 2^(n-1)" +
        dims(n, dim));
  }
  const double v = std::pow(rademacher_moment(n, pv), 2.0 / pv) / n;
  return point(v, kind, "dim >= 2^(n-1)", "closed form: l^p upper modified, 2 < p < inf");
}

ClosedFormValue upper_nj_lp(int n, const Exponent& p, Index dim) {
  require_n(n);
  const auto kind = ConstantKind::upper;
  if (!p.is_infinite() && p.value() == 2.0) {
    return point(1.0, kind, "any dim", "Hilbert space: C^(n) is identically 1");
  }
  if (p.is_infinite()) {
    if (dim < half_cube(n)) {
      throw PreconditionError("upper constant of l^inf equals n only for dim >= 2^(n-1)" + dims(n, dim));
    }
    return point(double(n), kind, "dim >= 2^(n-1)", "closed form: l^inf upper constant n");
  }
  const double pv = p.value();
  if (pv <= 2.0) {
    if (dim < n) {
      throw PreconditionError("upper constant n^(2/p-1) for 1 <= p <= 2 requires dim >= n" + dims(n, dim));
    }
    return point(std::pow(double(n), 2.0 / pv - 1.0), kind, "dim >= n",
                 "closed form: l^p upper constant, 1 <= p <= 2");
  }
  if (dim < half_cube(n)) {
    throw PreconditionError("two-sided bound on the upper constant for 2 < p < inf requires dim >= 2^(n-1)" +
                            dims(n, dim));
  }
  const double lo = upper_modified_lp(n, p, dim).value();
  const double q_recip = p.conjugate().reciprocal();
  const double b = haagerup_bp(pv);
  // At n = 2 both ends equal 2^(1-2/p); keep rounding from inverting them.
  const double hi = std::max(lo, std::min(std::pow(double(n), 2.0 * q_recip - 1.0), b * b));
  return {lo, hi, kind, "dim >= 2^(n-1)",
          "interval: upper modified value <= C <= min(n^(2/q-1), B_p^2)"};
}

ClosedFormValue lower_nj_lp(int n, const Exponent& p, Index dim) {
  require_n(n);
  const auto kind = ConstantKind::lower;
  if (!p.is_infinite() && p.value() < 2.0) {
    throw NoClosedForm("no closed form for the lower constant with p < 2 (got p = " + p.to_string() + ")");
  }
  if (!p.is_infinite() && p.value() == 2.0) {
    return point(1.0, kind, "any dim", "Hilbert space: C^(n) is identically 1");
  }
  if (dim < n) {
    throw PreconditionError("lower constant n^(2/p-1) for 2 <= p <= inf requires dim >= n" + dims(n, dim));
  }
  return point(std::pow(double(n), 2.0 * p.reciprocal() - 1.0), kind, "dim >= n",
               "closed form: l^p lower constant, 2 <= p <= inf");
}

ClosedFormValue lower_modified_lp(int n, const Exponent& p, Index dim) {
  require_n(n);
  const auto kind = ConstantKind::lower_modified;
  if (!p.is_infinite() && p.value() == 2.0) {
    return point(1.0, kind, "any dim", "Hilbert space: C^(n) is identically 1");
  }
  if (!p.is_infinite()) {
    throw NoClosedForm("no closed form for the lower modified constant with p = " + p.to_string());
  }
  if (dim < n) {
    throw PreconditionError("lower modified constant 1/n of l^inf requires dim >= n" + dims(n, dim));
  }
  return point(1.0 / n, kind, "dim >= n", "closed form: l^inf lower constants 1/n");
}

ClosedFormValue closed_form(ConstantKind kind, int n, const Exponent& p, Index dim) {
  switch (kind) {
    case ConstantKind::upper_modified: return upper_modified_lp(n, p, dim);
    case ConstantKind::upper: return upper_nj_lp(n, p, dim);
    case ConstantKind::lower: return lower_nj_lp(n, p, dim);
    case ConstantKind::lower_modified: return lower_modified_lp(n, p, dim);
  }
  throw Error("unknown constant kind");
}

double clarkson_cnj(const Exponent& p) {
  const double r = p.reciprocal();
  return std::pow(2.0, 2.0 * std::max(r, 1.0 - r) - 1.0);
}

double haagerup_bp(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw UnsupportedExponent("B_p is defined here for 2 <= p < inf");
  }
  const double a = 0.5 * (p + 1.0);
  double ratio_pow = 0.0;
  if (a < 170.0) {
    ratio_pow = std::pow(std::tgamma(a) / std::sqrt(std::numbers::pi), 1.0 / p);
  } else {
    ratio_pow = std::exp((std::lgamma(a) - 0.5 * std::log(std::numbers::pi)) / p);
  }
  return std::numbers::sqrt2 * ratio_pow;
}

double identity_tuple_value(int n) {
  check_tuple_size(n);
  std::uint64_t sum = 0;
  for (int j = 0; j <= n - 1; ++j) {
    const auto m = static_cast<std::uint64_t>(std::abs(n - 2 * j));
    sum += binomial(n - 1, j) * m * m;
  }
  const std::uint64_t denom = static_cast<std::uint64_t>(n) << (n - 1);
  return static_cast<double>(sum) / static_cast<double>(denom);
}

}  // namespace njc
