#include "njc/space.hpp"

#include <charconv>
#include <limits>

namespace njc {

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double p = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc() || ptr != last) {
    throw Error("cannot parse exponent '" + std::string(text) + "'");
  }
  return Exponent(p);
}

std::string Exponent::to_string() const {
  if (p_inf_) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p_);
  return std::string(buf, ptr);
}

std::string Space::to_string() const {
  return "l^" + p_.to_string() + "_" + std::to_string(dim_);
}

Vector sample_sphere(const Space& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_sphere(space, rng);
}

std::optional<std::vector<Vector>> extreme_points(const Space& space) {
  const Exponent& p = space.exponent();
  const Index d = space.dim();
  std::vector<Vector> points;
  if (p.is_infinite()) {
    if (d >= 31) throw BudgetExceeded("too many sign vertices for dimension " + std::to_string(d));
    const std::uint64_t count = std::uint64_t{1} << d;
    points.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      Vector v(d);
      for (Index i = 0; i < d; ++i) v(i) = (mask >> i) & 1U ? -1.0 : 1.0;
      points.push_back(std::move(v));
    }
    return points;
  }
  if (p.value() == 1.0) {
    points.reserve(2 * d);
    for (Index i = 0; i < d; ++i) {
      for (double s : {1.0, -1.0}) {
        Vector v = Vector::Zero(d);
        v(i) = s;
        points.push_back(std::move(v));
      }
    }
    return points;
  }
  return std::nullopt;
}

}  // namespace njc
