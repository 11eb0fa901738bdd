#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <vector>

#include "pseudostar/leaf_set.hpp"

namespace pseudostar {

/// C(n, k); 0 when k < 0 or k > n. Exact for n <= 64 at desk-scale k.
std::uint64_t binomial(int n, int k);

/// Position of `s` among all |s|-subsets of {1, 2, ...} in colex order,
/// i.e. sum over sorted members c_1 < ... < c_k of C(c_i - 1, i).
std::size_t colex_rank(LeafSet s);

/// Inverse of colex_rank for k-subsets.
LeafSet colex_unrank(std::size_t rank, int k);

/// Next k-subset of {1..64} in colex order (Gosper's hack on the mask).
LeafSet colex_next(LeafSet s);

/// Spreads the low |ground| bits of `index_mask` onto the members of `ground`
/// in increasing order. Monotone, so colex order is preserved.
LeafSet deposit(std::uint64_t index_mask, LeafSet ground);

/// Calls f(subset) for every k-subset of `ground` in colex order. If f returns
/// bool, returning true stops the walk; the function then returns true.
template <class F>
bool for_each_subset(LeafSet ground, int k, F&& f) {
  const int g = ground.size();
  if (k < 0 || k > g) return false;
  if (k == 0) {
    if constexpr (std::is_same_v<decltype(f(LeafSet{})), bool>) {
      return f(LeafSet{});
    } else {
      f(LeafSet{});
      return false;
    }
  }
  const std::uint64_t limit = g == 64 ? 0 : (std::uint64_t{1} << g);
  std::uint64_t idx = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  while (true) {
    const LeafSet s = deposit(idx, ground);
    if constexpr (std::is_same_v<decltype(f(s)), bool>) {
      if (f(s)) return true;
    } else {
      f(s);
    }
    const std::uint64_t c = idx & (~idx + 1);
    const std::uint64_t r = idx + c;
    if (r == 0) return false;
    idx = (((r ^ idx) >> 2) / c) | r;
    if (limit != 0 && idx >= limit) return false;
  }
}

/// First k-subset of `ground` (colex) satisfying `pred`, if any.
template <class Pred>
std::optional<LeafSet> find_subset(LeafSet ground, int k, Pred&& pred) {
  std::optional<LeafSet> found;
  for_each_subset(ground, k, [&](LeafSet s) {
    if (pred(s)) {
      found = s;
      return true;
    }
    return false;
  });
  return found;
}

/// All k-subsets of {1..n} in colex order.
std::vector<LeafSet> all_subsets(int n, int k);

}  // namespace pseudostar
