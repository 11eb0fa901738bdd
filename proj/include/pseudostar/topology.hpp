#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pseudostar/tree.hpp"

namespace pseudostar {

/// Unweighted leaf-labelled tree shape. Reuses the WeightedTree machinery with
/// every weight held at zero.
class Topology {
 public:
  using VertexPair = std::pair<VertexId, VertexId>;

  Topology(const std::vector<VertexPair>& edges, const std::map<VertexId, LeafLabel>& labels);
  explicit Topology(const WeightedTree& t);

  const WeightedTree& shape() const { return shape_; }
  std::size_t edge_count() const { return shape_.edge_count(); }
  LeafSet leaves() const { return shape_.leaves(); }
  Split split(EdgeId e) const { return shape_.split(e); }
  bool is_internal(EdgeId e) const { return shape_.is_internal(e); }

  WeightedTree weighted(std::span<const Rational> weights) const {
    return shape_.with_weights(weights);
  }

  std::string canonical_form() const { return pseudostar::canonical_form(shape_, false); }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.leaves() == b.leaves() && a.canonical_form() == b.canonical_form();
  }

 private:
  WeightedTree shape_;
};

}  // namespace pseudostar
