#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pseudostar/rational.hpp"

namespace pseudostar {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Independent rows and columns of an integer matrix, found by fraction-free
/// (Bareiss) elimination. pivot_rows[i] pairs with pivot_cols[i].
struct RankProfile {
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

RankProfile rank_profile(const IntMatrix& a);

/// Gaussian elimination with exact rationals; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b);

/// x = particular + sum_j t_j * kernel[j] for all real t.
struct AffineSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> kernel;
};

/// All solutions of a x = b, or nullopt when the system is inconsistent.
std::optional<AffineSolution> solve_affine(const IntMatrix& a, std::span<const Rational> b);

/// A point of the solution set with every coordinate > 0, found by
/// Fourier-Motzkin elimination over the kernel parameters.
std::optional<std::vector<Rational>> strictly_positive_point(const AffineSolution& s);

}  // namespace pseudostar
