#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pseudostar/transforms.hpp"
#include "pseudostar/tree.hpp"

namespace pseudostar {

/// Rational extended by the two infinities.
struct ExtendedRational {
  enum class Kind { NegInfinity, Finite, PosInfinity };

  Kind kind = Kind::Finite;
  Rational value;

  static ExtendedRational finite(Rational v) { return {Kind::Finite, std::move(v)}; }
  static ExtendedRational pos_infinity() { return {Kind::PosInfinity, Rational(0)}; }
  static ExtendedRational neg_infinity() { return {Kind::NegInfinity, Rational(0)}; }

  bool is_finite() const { return kind == Kind::Finite; }
  std::string to_string() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
  }
};

/// Range of total weight over all realizations of one family. Attainment is
/// reported separately: the positive-weight infimum is never attained.
struct WeightRange {
  ExtendedRational supremum;
  ExtendedRational infimum;
  bool sup_attained = false;
  bool inf_attained = false;
  bool singleton = false;
};

/// Some vertex of p splits its branches into two blocks that each carry fewer
/// than k leaves. Decided by a subset-sum over branch leaf counts.
bool oi_feasible(const WeightedTree& p, int k);

/// Every such (vertex, bipartition), new_edge_weight left at zero. Stops after
/// `limit` sites.
std::vector<OiInsertion> oi_sites(const WeightedTree& p, int k, std::size_t limit = 4096);

/// p: the positive essential pseudostar of kind (n, k) realizing the family.
/// sup = D_tot(p), attained only by p; if oi_feasible the infimum is
/// D_tot(p) - (n-k)*m (m = lightest twig) and is not attained, otherwise the
/// range is the single point D_tot(p).
WeightRange range_positive(const WeightedTree& p, int k);

/// General real weights: a single point unless oi_feasible, then (-inf, +inf).
WeightRange range_general(const WeightedTree& p, int k);

/// "sup=66 (attained), inf=45 (not attained)\nsingleton=no\n"
std::string format_range(const WeightRange& r);

}  // namespace pseudostar
