#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pseudostar/kernels.hpp"
#include "pseudostar/leaf_set.hpp"
#include "pseudostar/rational.hpp"
#include "pseudostar/tree.hpp"

namespace pseudostar {

/// Total map from the k-subsets of {1..n} to rationals, stored in colex order.
class KDissimilarity {
 public:
  /// All entries zero. Requires 2 <= k <= n-1 and n <= 64.
  KDissimilarity(int n, int k);
  /// `values` in colex subset order; size must be C(n, k).
  KDissimilarity(int n, int k, std::vector<Rational> values);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return values_.size(); }
  LeafSet ground() const { return LeafSet::first_n(n_); }

  /// D_I; throws BadSubset unless I is a k-subset of {1..n}.
  const Rational& operator[](LeafSet subset) const;
  void set(LeafSet subset, Rational value);

  const Rational& at_rank(std::size_t rank) const { return values_.at(rank); }
  LeafSet subset_at(std::size_t rank) const;
  std::span<const Rational> values() const { return values_; }

 private:
  std::size_t checked_rank(LeafSet subset) const;

  int n_;
  int k_;
  std::vector<Rational> values_;
};

/// D_I(t): sum of w(e) over edges whose split separates members of I.
Rational steiner_weight(const WeightedTree& t, LeafSet subset);

enum class KernelPath {
  Auto,      // best integer kernel when weights fit int64, else rational
  Rational,  // exact rational accumulation only
  Scalar,    // integer scalar kernel (falls back to Rational if weights do not fit)
  Avx2,      // integer AVX2 kernel (falls back as above)
};

/// Full k-dissimilarity vector of a tree with leaves {1..n}; 2 <= k <= n-1.
KDissimilarity k_vector(const WeightedTree& t, int k, KernelPath path = KernelPath::Auto);

/// Exact equality; throws ShapeMismatch when (n, k) differ.
bool vectors_equal(const KDissimilarity& a, const KDissimilarity& b);

/// First subset (colex) where a and b differ.
std::optional<LeafSet> first_mismatch(const KDissimilarity& a, const KDissimilarity& b);

}  // namespace pseudostar
