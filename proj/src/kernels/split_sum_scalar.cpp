#include "pseudostar/kernels.hpp"

namespace pseudostar::kernels {

std::int64_t split_sum_scalar(const SplitTable& table, std::uint64_t subset) noexcept {
  const std::uint64_t* sides = table.sides.data();
  const std::int64_t* weights = table.weights.data();
  const std::uint64_t other = table.full & subset;
  std::int64_t sum = 0;
  for (std::size_t e = 0, n = table.sides.size(); e < n; ++e) {
    const std::uint64_t s = sides[e];
    if ((s & subset) != 0 && (~s & other) != 0) sum += weights[e];
  }
  return sum;
}

}  // namespace pseudostar::kernels
