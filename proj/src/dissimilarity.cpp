#include "pseudostar/dissimilarity.hpp"

#include "pseudostar/error.hpp"
#include "pseudostar/parallel.hpp"
#include "pseudostar/subsets.hpp"

namespace pseudostar {

namespace {

constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 26;

void check_shape(int n, int k) {
  if (n < 3 || n > LeafSet::kMaxLabel)
    throw Error(ErrorCode::BadK, "n=" + std::to_string(n) + " outside 3..64");
  if (k < 2 || k > n - 1)
    throw Error(ErrorCode::BadK, "k=" + std::to_string(k) + " outside 2..n-1 for n=" + std::to_string(n));
  if (binomial(n, k) > kMaxEntries) throw Error(ErrorCode::TooLarge, "C(n,k) too large to store");
}

}  // namespace

KDissimilarity::KDissimilarity(int n, int k) : n_(n), k_(k) {
  check_shape(n, k);
  values_.assign(static_cast<std::size_t>(binomial(n, k)), Rational(0));
}

KDissimilarity::KDissimilarity(int n, int k, std::vector<Rational> values)
    : n_(n), k_(k), values_(std::move(values)) {
  check_shape(n, k);
  if (values_.size() != binomial(n, k))
    throw Error(ErrorCode::ShapeMismatch, "expected C(n,k) values");
  for (Rational& v : values_) v.canonicalize();
}

std::size_t KDissimilarity::checked_rank(LeafSet subset) const {
  if (subset.size() != k_ || !ground().contains(subset))
    throw Error(ErrorCode::BadSubset, subset.to_string() + " is not a " + std::to_string(k_) +
                                          "-subset of 1.." + std::to_string(n_));
  return colex_rank(subset);
}

const Rational& KDissimilarity::operator[](LeafSet subset) const { return values_[checked_rank(subset)]; }

void KDissimilarity::set(LeafSet subset, Rational value) {
  value.canonicalize();
  values_[checked_rank(subset)] = std::move(value);
}

LeafSet KDissimilarity::subset_at(std::size_t rank) const {
  if (rank >= values_.size()) throw Error(ErrorCode::BadSubset, "rank out of range");
  return colex_unrank(rank, k_);
}

Rational steiner_weight(const WeightedTree& t, LeafSet subset) {
  if (subset.empty() || !t.leaves().contains(subset))
    throw Error(ErrorCode::BadSubset, subset.to_string() + " not within the leaf set");
  Rational sum = 0;
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const LeafSet a = t.side(e, t.edge(e).u);
    if (a.intersects(subset) && (t.leaves() - a).intersects(subset)) sum += t.edge(e).weight;
  }
  return sum;
}

namespace {

/// Integer weights on a common denominator, when every partial sum fits.
struct ScaledWeights {
  std::vector<std::int64_t> weights;
  mpz_class denominator;
};

std::optional<ScaledWeights> scale_to_int64(const WeightedTree& t) {
  mpz_class den = 1;
  for (const Edge& e : t.edges()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.weight.get_den_mpz_t());
  ScaledWeights out{{}, den};
  mpz_class total_abs = 0;
  const mpz_class limit = mpz_class(1) << 62;
  for (const Edge& e : t.edges()) {
    const mpz_class scaled = e.weight.get_num() * (den / e.weight.get_den());
    total_abs += abs(scaled);
    if (total_abs >= limit) return std::nullopt;
    out.weights.push_back(scaled.get_si());
  }
  return out;
}

}  // namespace

KDissimilarity k_vector(const WeightedTree& t, int k, KernelPath path) {
  const int n = t.leaf_count();
  if (!t.has_standard_labels())
    throw Error(ErrorCode::BadLabeling, "k-weights need leaves labelled 1..n");
  if (k < 2 || k > n - 1)
    throw Error(ErrorCode::BadK, "k=" + std::to_string(k) + " outside 2..n-1 for n=" + std::to_string(n));

  const std::vector<LeafSet> subsets = all_subsets(n, k);
  std::vector<Rational> values(subsets.size());

  std::vector<std::uint64_t> sides;
  sides.reserve(t.edge_count());
  for (EdgeId e = 0; e < t.edge_count(); ++e) sides.push_back(t.side(e, t.edge(e).u).bits());

  std::optional<ScaledWeights> scaled;
  if (path != KernelPath::Rational) scaled = scale_to_int64(t);

  if (scaled) {
    const kernels::Isa isa = path == KernelPath::Scalar ? kernels::Isa::Scalar
                             : path == KernelPath::Avx2 ? kernels::Isa::Avx2
                                                        : kernels::best_isa();
    const kernels::SplitTable table{sides, scaled->weights, t.leaves().bits()};
    std::vector<std::uint64_t> masks(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i) masks[i] = subsets[i].bits();
    std::vector<std::int64_t> sums(subsets.size());
    parallel_for(subsets.size(), [&](std::size_t begin, std::size_t end) {
      kernels::split_sums(isa, table, std::span(masks).subspan(begin, end - begin),
                          std::span(sums).subspan(begin, end - begin));
      for (std::size_t i = begin; i < end; ++i) {
        values[i] = Rational(mpz_class(static_cast<long>(sums[i])), scaled->denominator);
        values[i].canonicalize();
      }
    }, 256);
  } else {
    const std::uint64_t full = t.leaves().bits();
    parallel_for(subsets.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const std::uint64_t m = subsets[i].bits();
        Rational sum = 0;
        for (EdgeId e = 0; e < sides.size(); ++e)
          if ((sides[e] & m) != 0 && (~sides[e] & full & m) != 0) sum += t.edge(e).weight;
        values[i] = std::move(sum);
      }
    }, 64);
  }
  return KDissimilarity(n, k, std::move(values));
}

bool vectors_equal(const KDissimilarity& a, const KDissimilarity& b) { return !first_mismatch(a, b); }

std::optional<LeafSet> first_mismatch(const KDissimilarity& a, const KDissimilarity& b) {
  if (a.n() != b.n() || a.k() != b.k())
    throw Error(ErrorCode::ShapeMismatch, "families differ in (n, k)");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.at_rank(i) != b.at_rank(i)) return a.subset_at(i);
  return std::nullopt;
}

}  // namespace pseudostar
