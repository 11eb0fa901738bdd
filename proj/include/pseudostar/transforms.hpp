#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pseudostar/tree.hpp"

namespace pseudostar {

/// Insertion point of a k-OI operation: the branches at `at_vertex` (named by
/// the neighbouring vertex) are split into two non-empty blocks and the
/// `moved` block is re-hung from a new vertex joined to `at_vertex` by an edge
/// of weight `new_edge_weight`.
struct OiInsertion {
  VertexId at_vertex = 0;
  std::vector<VertexId> kept;
  std::vector<VertexId> moved;
  Rational new_edge_weight;
};

/// Edges whose split has both sides smaller than k.
std::vector<EdgeId> io_eligible_edges(const WeightedTree& t, int k);

/// Contracts e and adds w(e)/k to every twig. Throws NotIoEligible.
WeightedTree k_io(const WeightedTree& t, EdgeId e, int k);

/// Inverse of k_io. Throws BadInsertion, or NegativeTwig when
/// `require_positive` and some twig would drop to <= 0.
WeightedTree k_oi(const WeightedTree& t, const OiInsertion& ins, int k,
                  bool require_positive = false);

/// Leaf sets carried by the two blocks of an insertion.
std::pair<LeafSet, LeafSet> insertion_blocks(const WeightedTree& t, const OiInsertion& ins);

/// Repeatedly contracts internal edges of weight exactly zero.
WeightedTree contract_zero_internal(const WeightedTree& t);

/// Picks which eligible edge to contract next (index into the span).
using EdgeChooser = std::function<std::size_t(const WeightedTree&, std::span<const EdgeId>)>;

/// Deterministic default: smallest smaller-side, then colex on that side.
std::size_t smallest_split_first(const WeightedTree& t, std::span<const EdgeId> eligible);

/// Essentialize, drop zero internal edges and k-IO every eligible edge until
/// none remains. 3 <= k <= n-1.
WeightedTree pseudostar_normal_form(const WeightedTree& t, int k);
WeightedTree pseudostar_normal_form(const WeightedTree& t, int k, const EdgeChooser& choose);

}  // namespace pseudostar
