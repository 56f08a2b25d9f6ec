#include "njc/functional.hpp"

namespace njc {

std::vector<SignPattern> sign_patterns(int n, int max_n) {
  check_tuple_size(n, max_n);
  const std::uint32_t count = detail::pattern_count(n);
  std::vector<SignPattern> out;
  out.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) out.emplace_back(n, k);
  return out;
}

}  // namespace njc
