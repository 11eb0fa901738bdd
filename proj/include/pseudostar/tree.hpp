#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudostar/leaf_set.hpp"
#include "pseudostar/rational.hpp"

namespace pseudostar {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  VertexId u;
  VertexId v;
  Rational weight;
};

/// Leaf bipartition induced by removing one edge. side_a holds the smallest
/// label of the tree.
struct Split {
  LeafSet side_a;
  LeafSet side_b;

  int smaller_size() const { return std::min(side_a.size(), side_b.size()); }
  int larger_size() const { return std::max(side_a.size(), side_b.size()); }
  /// The side with fewer leaves; side_a on ties.
  LeafSet smaller_side() const { return side_b.size() < side_a.size() ? side_b : side_a; }

  friend bool operator==(const Split&, const Split&) = default;
};

/// Path from a leaf to the nearest node. In a tree without nodes (a path) the
/// twig runs to the opposite leaf.
struct Twig {
  LeafLabel leaf;
  Rational path_weight;
  std::vector<EdgeId> edges;  // from the leaf outwards
  VertexId node;
};

struct Incidence {
  VertexId vertex;
  EdgeId edge;
};

/// Unrooted tree with labelled leaves and exact rational edge weights.
/// Immutable once built; every structural edit returns a new tree. Vertex ids
/// are opaque, only leaf labels carry meaning.
class WeightedTree {
 public:
  /// Validates the edge list and labelling. Vertex ids may be arbitrary; they
  /// are compacted to 0..V-1 keeping their relative order.
  static WeightedTree build(const std::vector<Edge>& edges,
                            const std::map<VertexId, LeafLabel>& labels);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Incidence> incident(VertexId v) const { return adjacency_.at(v); }
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  bool is_node(VertexId v) const { return degree(v) >= 3; }

  std::optional<LeafLabel> label(VertexId v) const;
  VertexId vertex_of(LeafLabel l) const;
  LeafSet leaves() const { return leaves_; }
  int leaf_count() const { return leaves_.size(); }
  /// True when the leaf labels are exactly {1, ..., n}.
  bool has_standard_labels() const { return leaves_ == LeafSet::first_n(leaf_count()); }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  VertexId other_end(EdgeId e, VertexId v) const;

  /// Leaves reachable from `endpoint` without crossing e.
  LeafSet side(EdgeId e, VertexId endpoint) const;
  Split split(EdgeId e) const;

  const std::vector<Twig>& twigs() const { return twigs_; }
  const Twig& twig(LeafLabel l) const;
  EdgeId pendant_edge(LeafLabel l) const;
  bool is_internal(EdgeId e) const { return !twig_edge_.at(e); }
  std::vector<EdgeId> internal_edges() const;

  bool is_essential() const;
  bool is_pseudostar(int k) const;
  Rational total_weight() const;

  std::vector<Rational> weights() const;
  /// Same shape, new weights (one per edge, in edge order).
  WeightedTree with_weights(std::span<const Rational> weights) const;

 private:
  WeightedTree() = default;
  void index();

  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<LeafLabel> label_of_;  // 0 when unlabelled
  std::map<LeafLabel, VertexId> vertex_of_;
  std::vector<LeafSet> u_side_;
  std::vector<bool> twig_edge_;
  std::vector<Twig> twigs_;
  LeafSet leaves_;
};

inline WeightedTree build_tree(const std::vector<Edge>& edges,
                               const std::map<VertexId, LeafLabel>& labels) {
  return WeightedTree::build(edges, labels);
}

/// Minimal subtree spanning `s` with induced weights. Degree-2 vertices are
/// kept; compose with essentialize() to suppress them.
WeightedTree restrict_to(const WeightedTree& t, LeafSet s);

/// Replaces every maximal chain through unlabelled degree-2 vertices by one
/// edge carrying the chain's weight.
WeightedTree essentialize(const WeightedTree& t);

/// Identifies the endpoints of an internal edge; `e` must not lie on a twig.
WeightedTree contract_edge(const WeightedTree& t, EdgeId e);

inline Split edge_split(const WeightedTree& t, EdgeId e) { return t.split(e); }
inline bool is_pseudostar(const WeightedTree& t, int k) { return t.is_pseudostar(k); }
inline Rational total_weight(const WeightedTree& t) { return t.total_weight(); }

/// Rooted at the smallest leaf, children sorted. Two trees over the same leaf
/// set are labelled-isomorphic iff their forms agree.
std::string canonical_form(const WeightedTree& t, bool with_weights = true);

/// Label-preserving isomorphism with exactly matching edge weights.
bool labeled_equal(const WeightedTree& a, const WeightedTree& b);

/// Maximal classes of pairwise-neighbouring leaves, sorted by smallest label.
/// Requires an essential tree.
std::vector<LeafSet> complete_cherries(const WeightedTree& t);

}  // namespace pseudostar
