#pragma once

#include <string>
#include <string_view>

namespace njc {

// Which of the four sup/inf constants is meant. Plain kinds range over all
// nonzero tuples (equivalently the unit sphere of l_n^2(X)); modified kinds
// restrict every x_j to the unit sphere of X.
enum class ConstantKind { upper, lower, upper_modified, lower_modified };

inline bool is_upper(ConstantKind k) {
  return k == ConstantKind::upper || k == ConstantKind::upper_modified;
}

inline bool is_modified(ConstantKind k) {
  return k == ConstantKind::upper_modified || k == ConstantKind::lower_modified;
}

std::string to_string(ConstantKind k);
ConstantKind parse_kind(std::string_view text);

}  // namespace njc
