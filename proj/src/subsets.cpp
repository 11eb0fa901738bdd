#include "pseudostar/subsets.hpp"

#include <array>
#include <stdexcept>

namespace pseudostar {

namespace {

constexpr int kTableSize = 65;

const std::array<std::array<std::uint64_t, kTableSize>, kTableSize>& pascal() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kTableSize>, kTableSize> t{};
    for (int n = 0; n < kTableSize; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n >= kTableSize) throw std::out_of_range("binomial: n too large");
  return pascal()[n][k];
}

std::size_t colex_rank(LeafSet s) {
  std::size_t rank = 0;
  int i = 1;
  s.for_each([&](LeafLabel c) { rank += binomial(c - 1, i++); });
  return rank;
}

LeafSet colex_unrank(std::size_t rank, int k) {
  LeafSet out;
  for (int i = k; i >= 1; --i) {
    // largest c with C(c-1, i) <= rank
    int c = i;
    while (binomial(c, i) <= rank) ++c;
    rank -= binomial(c - 1, i);
    out.insert(c);
  }
  return out;
}

LeafSet colex_next(LeafSet s) {
  const std::uint64_t x = s.bits();
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return LeafSet((((r ^ x) >> 2) / c) | r);
}

LeafSet deposit(std::uint64_t index_mask, LeafSet ground) {
  std::uint64_t out = 0;
  std::uint64_t g = ground.bits();
  for (std::uint64_t m = index_mask; m != 0 && g != 0; m >>= 1) {
    const std::uint64_t low = g & (~g + 1);
    if (m & 1U) out |= low;
    g &= g - 1;
  }
  return LeafSet(out);
}

std::vector<LeafSet> all_subsets(int n, int k) {
  std::vector<LeafSet> out;
  out.reserve(static_cast<std::size_t>(binomial(n, k)));
  for_each_subset(LeafSet::first_n(n), k, [&](LeafSet s) { out.push_back(s); });
  return out;
}

}  // namespace pseudostar
