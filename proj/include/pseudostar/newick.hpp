#pragma once

#include <string>
#include <string_view>

#include "pseudostar/tree.hpp"

namespace pseudostar {

/// Newick with a length on every edge; leaves named by positive integers and
/// lengths given as decimals or "p/q". The root may carry a label only when it
/// has a single child (the two-leaf tree). Throws ParseError with position.
WeightedTree parse_tree(std::string_view text);

/// Rooted at the lowest-id internal vertex (or leaf, if there is none), each
/// child list ordered by smallest descendant label. Ends with ";\n".
std::string serialize_tree(const WeightedTree& t);

}  // namespace pseudostar
