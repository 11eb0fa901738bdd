#include "pseudostar/topology.hpp"

namespace pseudostar {

namespace {

WeightedTree zero_weighted(const std::vector<Topology::VertexPair>& pairs,
                           const std::map<VertexId, LeafLabel>& labels) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) edges.push_back(Edge{u, v, Rational(0)});
  return WeightedTree::build(edges, labels);
}

WeightedTree strip_weights(const WeightedTree& t) {
  const std::vector<Rational> zeros(t.edge_count(), Rational(0));
  return t.with_weights(zeros);
}

}  // namespace

Topology::Topology(const std::vector<VertexPair>& edges, const std::map<VertexId, LeafLabel>& labels)
    : shape_(zero_weighted(edges, labels)) {}

Topology::Topology(const WeightedTree& t) : shape_(strip_weights(t)) {}

}  // namespace pseudostar
