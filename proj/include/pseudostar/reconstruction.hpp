#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pseudostar/dissimilarity.hpp"
#include "pseudostar/topology.hpp"
#include "pseudostar/tree.hpp"

namespace pseudostar {

using LeafPartition = std::vector<LeafSet>;

/// Outcome of a quartet (i, j, l, m): which pairing the restricted tree shows.
enum class Pairing { IJ_LM, IL_JM, IM_JL, Star };

struct QuartetResolution {
  std::array<LeafLabel, 4> quartet;  // (i, j, l, m) as asked
  Pairing outcome;

  /// The two pairs of the resolved pairing, or nullopt for Star.
  std::optional<std::pair<LeafSet, LeafSet>> pairs() const;
  LeafSet leaves() const;
};

/// Ratio between the quartet-plus-R combination
///   D_{i,m,R} + D_{j,l,R} - D_{i,j,R} - D_{l,m,R}
/// and the weight of the edge it isolates, when R lies on one side of it.
inline constexpr int kInternalEdgeFactor = 1;

/// D_{i,m,R} + D_{j,l,R} - D_{i,j,R} - D_{l,m,R}
Rational quartet_edge_combination(const KDissimilarity& d, LeafLabel i, LeafLabel j,
                                  LeafLabel l, LeafLabel m, LeafSet r);

/// D_{i,X} - D_{l,X} is constant over X in C([n]-{i,l}, k-1). 3 <= k <= n-2.
bool are_neighbors(const KDissimilarity& d, LeafLabel i, LeafLabel l);

/// Equivalence classes of are_neighbors, sorted by smallest label. Throws
/// NotTreelike if the relation is not transitive.
LeafPartition neighbor_classes(const KDissimilarity& d);

/// Leaves on which quartets are resolved: the smallest member of every class
/// plus the second smallest member of every class with two or more leaves.
LeafSet quartet_leaves(const LeafPartition& cherries);

/// Resolves the Buneman index of (i, j, l, m) from k-weights. Throws Ambiguous
/// when two pairings both qualify.
QuartetResolution resolve_quartet(const KDissimilarity& d, LeafLabel i, LeafLabel j,
                                  LeafLabel l, LeafLabel m, const LeafPartition& cherries);

/// resolve_quartet over every 4-subset of quartet_leaves(cherries), colex order.
std::vector<QuartetResolution> resolve_all_quartets(const KDissimilarity& d,
                                                    const LeafPartition& cherries);

/// Unique essential topology whose quartets match `resolutions` (which cover
/// every 4-subset of quartet_leaves(cherries)), with the remaining cherry
/// members attached at their stalks. Throws Inconsistent.
Topology assemble_topology(std::span<const QuartetResolution> resolutions,
                           const LeafPartition& cherries);

/// Weights of the internal edges of `topo`, keyed by edge id. Throws
/// NoValidWitness when an edge has no admissible (i, j, l, m, R).
std::map<EdgeId, Rational> internal_edge_weights(const KDissimilarity& d, const Topology& topo);

/// Twig weights keyed by leaf. Throws InconsistentSystem when twig differences
/// depend on the choice of complement set.
std::map<LeafLabel, Rational> twig_weights(const KDissimilarity& d, const Topology& topo,
                                           const std::map<EdgeId, Rational>& internal);

/// k = n-1: the star with w_i = (sum_J D_J)/(n-1) - D_{[n]-{i}}.
WeightedTree star_solve(const KDissimilarity& d);

struct Verification {
  bool ok = false;
  std::optional<LeafSet> witness;  // first mismatching subset
};

/// Exact comparison of k_vector(t, k) with d. Throws ShapeMismatch if the
/// leaves of t are not {1..n}.
Verification verify_realization(const WeightedTree& t, const KDissimilarity& d);

struct ReconstructionReport {
  WeightedTree tree;
  bool verified = false;
  std::optional<LeafSet> witness;
};

/// The internal-nonzero essential pseudostar of kind (n, k) realizing d, always
/// verified by recomputation. Stage failures throw NotTreelike (or BadK); a
/// verification mismatch is reported with verified = false and a witness.
ReconstructionReport reconstruct(const KDissimilarity& d);

}  // namespace pseudostar
