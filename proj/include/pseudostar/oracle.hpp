#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pseudostar/dissimilarity.hpp"
#include "pseudostar/topology.hpp"
#include "pseudostar/tree.hpp"

// Brute-force reference machinery. Nothing here calls into dissimilarity's
// split-sum path or the reconstruction pipeline.
namespace pseudostar::oracle {

/// Union of all pairwise leaf paths inside I, found by explicit path walks.
Rational brute_force_steiner(const WeightedTree& t, LeafSet subset);

struct WeightBounds {
  Rational lo;
  Rational hi;
};

/// Generation scheme: leaves 4..n are inserted one at a time, each either
/// hung from a random node (probability `multifurcation`) or from the midpoint
/// of a random edge. Every edge whose two sides both have fewer than k leaves
/// is then contracted, labels are shuffled and weights drawn as p/q with q
/// uniform in 1..max_denominator and p/q uniform in the bounds. Internal
/// weights of exactly zero are redrawn.
struct RandomSpec {
  int n = 5;
  int k = 3;
  WeightBounds twig{Rational(1), Rational(10)};
  WeightBounds internal{Rational(1), Rational(10)};
  std::uint64_t seed = 0;
  int max_denominator = 1;
  double multifurcation = 0.25;
};

/// Essential internal-nonzero pseudostar of kind (n, k). Throws InfeasibleSpec.
WeightedTree random_pseudostar(const RandomSpec& spec);

/// Same scheme without the pseudostar contraction step; `subdivisions`
/// unlabelled degree-2 vertices are then inserted on random edges (each
/// splitting the edge weight at a random rational point).
struct RandomTreeSpec {
  int n = 5;
  WeightBounds twig{Rational(1), Rational(10)};
  WeightBounds internal{Rational(1), Rational(10)};
  std::uint64_t seed = 0;
  int max_denominator = 1;
  double multifurcation = 0.25;
  int subdivisions = 0;
};

WeightedTree random_tree(const RandomTreeSpec& spec);

/// All essential labelled topologies on {1..n}, 3 <= n <= 9, in canonical order.
std::vector<Topology> enumerate_topologies(int n);

/// One realizing topology with its affine family of weights.
struct Realization {
  WeightedTree sample;                            // a point of the family
  std::vector<std::vector<Rational>> directions;  // per-edge kernel basis

  bool parametric() const { return !directions.empty(); }
  /// t has this topology and its weights lie in the family.
  bool contains(const WeightedTree& t) const;
};

using TopologyFilter = std::function<bool(const Topology&)>;

/// Solves D_I(T, w) = d[I] for every topology T (passing `filter`) by exact
/// elimination. With positive_only, keeps topologies whose family has a point
/// with all weights > 0 and reports such a point. Sorted by canonical form.
std::vector<Realization> brute_force_realizations(const KDissimilarity& d, bool positive_only,
                                                  const TopologyFilter& filter = {});
std::vector<Realization> brute_force_realizations(const KDissimilarity& d, bool positive_only,
                                                  std::span<const Topology> topologies);

}  // namespace pseudostar::oracle
