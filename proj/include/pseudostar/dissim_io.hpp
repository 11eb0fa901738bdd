#pragma once

#include <string>
#include <string_view>

#include "pseudostar/dissimilarity.hpp"

namespace pseudostar {

// Text format, one item per line, '#' starts a comment:
//
//   n=8 k=5
//   1 2 3 4 5 = 42
//   1 2 3 4 6 = 85/2
//   ...
//
// Members strictly increasing. Records are written in colex order; any order
// is accepted on input.

KDissimilarity parse_dissimilarity(std::string_view text);
std::string serialize_dissimilarity(const KDissimilarity& d);

}  // namespace pseudostar
