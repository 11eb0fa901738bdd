#pragma once

#include <map>
#include <vector>

#include "pseudostar/newick.hpp"
#include "pseudostar/tree.hpp"

namespace pseudostar::fixtures {

// The 8-leaf pair related by one 5-IO move. Left: two hubs joined by the
// weight-10 edge, {1..4} on one side and {5..8} on the other. Right: the same
// four cherries around a single centre, every twig 2 heavier.
//
// Vertex ids of the left tree: 20 = left hub, 21 = right hub, 10/11 = stalks of
// {1,2}/{3,4}, 12/13 = stalks of {7,8}/{5,6}; leaf l sits on vertex l.
inline WeightedTree eight_leaf_left() {
  const std::vector<Edge> edges = {
      {20, 21, Rational(10)},
      {20, 10, Rational(1)}, {10, 1, Rational(5)}, {10, 2, Rational(6)},
      {20, 11, Rational(1)}, {11, 3, Rational(5)}, {11, 4, Rational(6)},
      {21, 12, Rational(2)}, {12, 7, Rational(5)}, {12, 8, Rational(5)},
      {21, 13, Rational(3)}, {13, 5, Rational(5)}, {13, 6, Rational(6)},
  };
  std::map<VertexId, LeafLabel> labels;
  for (LeafLabel l = 1; l <= 8; ++l) labels.emplace(static_cast<VertexId>(l), l);
  return build_tree(edges, labels);
}

inline WeightedTree eight_leaf_right() {
  return parse_tree("((1:7,2:8):1,(3:7,4:8):1,(7:7,8:7):2,(5:7,6:8):3);");
}

/// Star on leaves 1..weights.size(), leaf i carrying weights[i-1].
inline WeightedTree star(const std::vector<Rational>& weights) {
  std::vector<Edge> edges;
  std::map<VertexId, LeafLabel> labels;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    edges.push_back({0, i + 1, weights[i]});
    labels.emplace(i + 1, static_cast<LeafLabel>(i + 1));
  }
  return build_tree(edges, labels);
}

/// Binary caterpillar with unit weights: cherries {1,2} and {n-1,n} at the
/// ends, leaf i (2 < i < n-1) on spine vertex i-1.
inline WeightedTree caterpillar(int n) {
  std::vector<Edge> edges;
  std::map<VertexId, LeafLabel> labels;
  const auto spine = [&](int i) { return static_cast<VertexId>(100 + i); };
  for (int i = 1; i + 1 <= n - 2; ++i) edges.push_back({spine(i), spine(i + 1), Rational(1)});
  const auto hang = [&](int spine_index, LeafLabel l) {
    edges.push_back({spine(spine_index), static_cast<VertexId>(l), Rational(1)});
    labels.emplace(static_cast<VertexId>(l), l);
  };
  hang(1, 1);
  hang(1, 2);
  for (LeafLabel l = 3; l <= n - 2; ++l) hang(l - 1, l);
  hang(n - 2, n - 1);
  hang(n - 2, n);
  return build_tree(edges, labels);
}

}  // namespace pseudostar::fixtures
