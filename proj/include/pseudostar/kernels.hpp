#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace pseudostar::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// True when the AVX2 kernel was compiled in and the CPU reports AVX2.
bool avx2_available() noexcept;

/// Widest available instruction set.
Isa best_isa() noexcept;

/// Edge table for the split-sum kernels. sides[e] is the leaf mask on one side
/// of edge e; the other side is full & ~sides[e]. Weights are integers on a
/// common scale chosen by the caller so that no partial sum overflows.
struct SplitTable {
  std::span<const std::uint64_t> sides;
  std::span<const std::int64_t> weights;
  std::uint64_t full = 0;
};

/// Sum of weights[e] over edges whose two sides both meet `subset`.
std::int64_t split_sum_scalar(const SplitTable& table, std::uint64_t subset) noexcept;
std::int64_t split_sum_avx2(const SplitTable& table, std::uint64_t subset) noexcept;

/// out[i] = split_sum(table, subsets[i]) with the requested kernel. Falls back
/// to the scalar kernel when `isa` is not available.
void split_sums(Isa isa, const SplitTable& table, std::span<const std::uint64_t> subsets,
                std::span<std::int64_t> out) noexcept;

}  // namespace pseudostar::kernels
