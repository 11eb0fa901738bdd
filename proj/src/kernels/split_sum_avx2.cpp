#include "pseudostar/kernels.hpp"

#if defined(PSEUDOSTAR_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace pseudostar::kernels {

#if defined(PSEUDOSTAR_HAVE_AVX2)

namespace {

__attribute__((target("avx2"))) std::int64_t split_sum_avx2_impl(
    const std::uint64_t* sides, const std::int64_t* weights, std::size_t n, std::uint64_t full,
    std::uint64_t subset) noexcept {
  const __m256i vsubset = _mm256_set1_epi64x(static_cast<long long>(subset));
  const __m256i vother = _mm256_set1_epi64x(static_cast<long long>(full & subset));
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = _mm256_setzero_si256();

  std::size_t e = 0;
  for (; e + 4 <= n; e += 4) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sides + e));
    const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(weights + e));
    const __m256i here = _mm256_and_si256(s, vsubset);
    const __m256i there = _mm256_andnot_si256(s, vother);
    const __m256i missing =
        _mm256_or_si256(_mm256_cmpeq_epi64(here, zero), _mm256_cmpeq_epi64(there, zero));
    acc = _mm256_add_epi64(acc, _mm256_andnot_si256(missing, w));
  }
  alignas(32) long long lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::int64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];

  const std::uint64_t other = full & subset;
  for (; e < n; ++e) {
    const std::uint64_t s = sides[e];
    if ((s & subset) != 0 && (~s & other) != 0) sum += weights[e];
  }
  return sum;
}

}  // namespace

std::int64_t split_sum_avx2(const SplitTable& table, std::uint64_t subset) noexcept {
  return split_sum_avx2_impl(table.sides.data(), table.weights.data(), table.sides.size(),
                             table.full, subset);
}

#else

std::int64_t split_sum_avx2(const SplitTable& table, std::uint64_t subset) noexcept {
  return split_sum_scalar(table, subset);
}

#endif

}  // namespace pseudostar::kernels
