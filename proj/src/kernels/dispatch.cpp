#include "pseudostar/kernels.hpp"

#include <algorithm>

namespace pseudostar::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool avx2_available() noexcept {
#if defined(PSEUDOSTAR_HAVE_AVX2)
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

Isa best_isa() noexcept { return avx2_available() ? Isa::Avx2 : Isa::Scalar; }

void split_sums(Isa isa, const SplitTable& table, std::span<const std::uint64_t> subsets,
                std::span<std::int64_t> out) noexcept {
  const std::size_t n = std::min(subsets.size(), out.size());
  if (isa == Isa::Avx2 && avx2_available()) {
    for (std::size_t i = 0; i < n; ++i) out[i] = split_sum_avx2(table, subsets[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = split_sum_scalar(table, subsets[i]);
  }
}

}  // namespace pseudostar::kernels
