// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "pseudostar/dissimilarity.hpp"
#include "pseudostar/error.hpp"
#include "pseudostar/oracle.hpp"
#include "pseudostar/reconstruction.hpp"
#include "pseudostar/transforms.hpp"
#include "pseudostar/weight_range.hpp"

namespace {

using namespace pseudostar;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool internal_nonzero(const WeightedTree& t) {
  for (EdgeId e : t.internal_edges())
    if (t.edge(e).weight == 0) return false;
  return true;
}

Rational min_twig(const WeightedTree& t) {
  Rational m = t.edge(t.pendant_edge(t.leaves().min())).weight;
  t.leaves().for_each([&](LeafLabel l) { m = std::min(m, Rational(t.edge(t.pendant_edge(l)).weight)); });
  return m;
}

// 1: the 5-IO move of the worked example
Outcome eight_leaf() {
  Outcome out;
  const WeightedTree left = fixtures::eight_leaf_left();
  std::optional<EdgeId> centre;
  for (EdgeId e : left.internal_edges())
    if (left.edge(e).weight == 10) centre = e;
  if (!centre) {
    out.fail("no weight-10 edge");
    return out;
  }
  const WeightedTree right = k_io(left, *centre, 5);
  if (!labeled_equal(right, fixtures::eight_leaf_right())) out.fail("5-IO result differs from the right tree");
  if (total_weight(left) != 60 || total_weight(right) != 66)
    out.fail("totals " + format_rational(total_weight(left)) + " -> " + format_rational(total_weight(right)));
  if (Rational(66 - 60) != Rational(8 - 5, 5) * 10) out.fail("total change is not (n-k)/k * y");
  const KDissimilarity a = k_vector(left, 5), b = k_vector(right, 5);
  if (a.size() != 56 || !vectors_equal(a, b)) out.fail("5-weights differ");
  out.detail = out.pass ? "60 -> 66, 56 identical 5-weights" : out.detail;
  return out;
}

// 2: reconstruct(k_vector(P, k)) == P
Outcome round_trip() {
  Outcome out;
  std::mt19937_64 rng(2002);
  for (int trial = 0; trial < 200; ++trial) {
    oracle::RandomSpec spec;
    spec.n = pick(rng, 5, 10);
    spec.k = pick(rng, 3, spec.n - 1);
    spec.seed = rng();
    spec.max_denominator = pick(rng, 1, 4);
    const WeightedTree p = oracle::random_pseudostar(spec);
    try {
      const ReconstructionReport r = reconstruct(k_vector(p, spec.k));
      if (!r.verified || !labeled_equal(r.tree, p))
        out.fail("trial " + std::to_string(trial) + " (n=" + std::to_string(spec.n) + ", k=" +
                 std::to_string(spec.k) + ") reconstructed a different tree");
    } catch (const Error& e) {
      out.fail("trial " + std::to_string(trial) + ": " + e.what());
    }
  }
  if (out.pass) out.detail = "200/200 exact";
  return out;
}

// 3: split-sum Steiner weight against path walks
Outcome steiner() {
  Outcome out;
  std::mt19937_64 rng(3003);
  for (int trial = 0; trial < 500; ++trial) {
    oracle::RandomTreeSpec spec;
    spec.n = pick(rng, 3, 20);
    spec.seed = rng();
    spec.max_denominator = 5;
    spec.internal = {Rational(-10), Rational(10)};
    spec.subdivisions = pick(rng, 0, 3);
    const WeightedTree t = oracle::random_tree(spec);
    std::vector<LeafLabel> labels = t.leaves().members();
    std::shuffle(labels.begin(), labels.end(), rng);
    const int size = pick(rng, 1, spec.n);
    LeafSet s;
    for (int i = 0; i < size; ++i) s.insert(labels[i]);
    if (steiner_weight(t, s) != oracle::brute_force_steiner(t, s))
      out.fail("trial " + std::to_string(trial) + " subset " + s.to_string());
  }
  if (out.pass) out.detail = "500/500 equal";
  return out;
}

// Realizations with a single point and no zero internal edge.
std::vector<const oracle::Realization*> proper(const std::vector<oracle::Realization>& all, Outcome& out,
                                               const std::string& where) {
  std::vector<const oracle::Realization*> keep;
  for (const oracle::Realization& r : all) {
    if (r.parametric()) out.fail(where + ": parametric family on " + canonical_form(r.sample, false));
    else if (internal_nonzero(r.sample)) keep.push_back(&r);
  }
  return keep;
}

// 4: uniqueness among pseudostar-shaped realizations
Outcome pseudostar_uniqueness() {
  Outcome out;
  std::mt19937_64 rng(4004);
  std::size_t families = 0;
  for (int n = 4; n <= 7; ++n) {
    const std::vector<Topology> all = oracle::enumerate_topologies(n);
    for (int k = 3; k <= n - 1; ++k) {
      std::vector<Topology> shapes;
      std::copy_if(all.begin(), all.end(), std::back_inserter(shapes),
                   [&](const Topology& t) { return t.shape().is_pseudostar(k); });
      for (int f = 0; f < 20; ++f, ++families) {
        oracle::RandomSpec spec;
        spec.n = n;
        spec.k = k;
        spec.seed = rng();
        spec.internal = {Rational(-10), Rational(10)};
        spec.max_denominator = 3;
        const KDissimilarity d = k_vector(oracle::random_pseudostar(spec), k);
        const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " family " + std::to_string(f);
        const auto realizations = oracle::brute_force_realizations(d, false, shapes);
        const auto found = proper(realizations, out, where);
        if (found.size() != 1) {
          out.fail(where + ": " + std::to_string(found.size()) + " realizations");
          continue;
        }
        const ReconstructionReport r = reconstruct(d);
        if (!labeled_equal(found.front()->sample, r.tree)) out.fail(where + ": oracle and reconstruction differ");
      }
    }
  }
  if (out.pass) out.detail = std::to_string(families) + " families, one realization each";
  return out;
}

// 5: small k, every essential topology
Outcome small_k_uniqueness() {
  Outcome out;
  std::mt19937_64 rng(5005);
  std::size_t families = 0;
  for (int n = 5; n <= 7; ++n) {
    const std::vector<Topology> all = oracle::enumerate_topologies(n);
    for (int k = 3; 2 * k <= n + 1; ++k) {
      for (int f = 0; f < 20; ++f, ++families) {
        oracle::RandomTreeSpec spec;
        spec.n = n;
        spec.seed = rng();
        spec.max_denominator = 3;
        const WeightedTree p = oracle::random_tree(spec);
        const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " family " + std::to_string(f);
        const auto realizations = oracle::brute_force_realizations(k_vector(p, k), false, all);
        const auto found = proper(realizations, out, where);
        if (found.size() != 1 || !labeled_equal(found.front()->sample, p))
          out.fail(where + ": " + std::to_string(found.size()) + " essential trees");
        for (const oracle::Realization& r : realizations)
          if (!r.parametric() && !labeled_equal(contract_zero_internal(r.sample), p))
            out.fail(where + ": degenerate realization is not the source tree");
      }
    }
  }
  if (out.pass) out.detail = std::to_string(families) + " families, one essential tree each";
  return out;
}

// Random positive oi_feasible pseudostar.
WeightedTree feasible_pseudostar(std::mt19937_64& rng, int& k) {
  while (true) {
    oracle::RandomSpec spec;
    spec.n = pick(rng, 5, 12);
    spec.k = pick(rng, spec.n / 2 + 1, spec.n - 1);
    spec.seed = rng();
    spec.max_denominator = 3;
    spec.multifurcation = 0.5;
    const WeightedTree p = oracle::random_pseudostar(spec);
    if (oi_feasible(p, spec.k)) {
      k = spec.k;
      return p;
    }
  }
}

// 6: positive range by OI sampling
Outcome positive_range() {
  Outcome out;
  std::mt19937_64 rng(6006);
  for (int trial = 0; trial < 50; ++trial) {
    int k = 0;
    const WeightedTree p = feasible_pseudostar(rng, k);
    const int n = p.leaf_count();
    const KDissimilarity d = k_vector(p, k);
    const Rational top = total_weight(p);
    const Rational m = min_twig(p);
    const Rational infimum = top - (n - k) * m;
    const WeightRange range = range_positive(p, k);
    if (range.supremum != ExtendedRational::finite(top) || range.infimum != ExtendedRational::finite(infimum))
      out.fail("trial " + std::to_string(trial) + ": range " + format_range(range));
    const std::vector<OiInsertion> sites = oi_sites(p, k);
    const auto sample = [&](const Rational& y) -> WeightedTree {
      OiInsertion ins = sites[pick(rng, 0, static_cast<int>(sites.size()) - 1)];
      ins.new_edge_weight = y;
      return k_oi(p, ins, k, true);
    };
    for (int s = 0; s < 10; ++s) {
      const int q = 64;
      const WeightedTree t = sample(Rational(k) * m * (Rational(pick(rng, 1, q - 1)) / q));
      const Rational total = total_weight(t);
      if (!verify_realization(t, d).ok) out.fail("trial " + std::to_string(trial) + ": sample is not a realization");
      if (!(infimum < total && total <= top)) out.fail("trial " + std::to_string(trial) + ": total out of range");
      if ((total == top) != labeled_equal(t, p)) out.fail("trial " + std::to_string(trial) + ": equality away from P");
    }
    const WeightedTree near = sample(Rational(k) * m * (1 - Rational(1, 1024)));
    if (total_weight(near) - infimum > (n - k) * m / 1024 || !verify_realization(near, d).ok)
      out.fail("trial " + std::to_string(trial) + ": near-infimum sample too far");
  }
  if (out.pass) out.detail = "50 pseudostars x 10 samples inside (inf, sup]";
  return out;
}

// 7: singleton for k <= n/2, unbounded under general weights when OI is possible
Outcome dichotomy() {
  Outcome out;
  std::mt19937_64 rng(7007);
  for (int n = 4; n <= 7; ++n) {
    const std::vector<Topology> all = oracle::enumerate_topologies(n);
    for (int k = 2; 2 * k <= n; ++k) {
      for (int f = 0; f < 10; ++f) {
        oracle::RandomTreeSpec spec;
        spec.n = n;
        spec.seed = rng();
        spec.max_denominator = 2;
        const WeightedTree p = oracle::random_tree(spec);
        const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k);
        const auto realizations = oracle::brute_force_realizations(k_vector(p, k), false, all);
        if (realizations.empty()) out.fail(where + ": no realization");
        for (const oracle::Realization& r : realizations)
          if (r.parametric() || total_weight(r.sample) != total_weight(p)) out.fail(where + ": totals differ");
        if (k >= 3 && !range_positive(p, k).singleton) out.fail(where + ": range not a singleton");
      }
    }
  }
  const Rational big(10'000'000);
  for (int trial = 0; trial < 10; ++trial) {
    int k = 0;
    const WeightedTree p = feasible_pseudostar(rng, k);
    const KDissimilarity d = k_vector(p, k);
    const WeightRange range = range_general(p, k);
    if (range.supremum.is_finite() || range.infimum.is_finite()) out.fail("general range is bounded");
    OiInsertion ins = oi_sites(p, k).front();
    for (const Rational& y : {Rational(-k) * big, Rational(k) * big}) {
      ins.new_edge_weight = y;
      const WeightedTree t = k_oi(p, ins, k, false);
      const Rational total = total_weight(t);
      if (!verify_realization(t, d).ok) out.fail("signed insertion is not a realization");
      if (abs(total) <= 1'000'000) out.fail("signed insertion total " + format_rational(total));
    }
  }
  if (out.pass) out.detail = "k <= n/2 singleton; signed insertions reach beyond 1e6";
  return out;
}

// 8: ratio between the quartet-plus-R combination and the edge weight
Outcome edge_factor() {
  Outcome out;
  std::mt19937_64 rng(8008);
  std::vector<Rational> ratios;
  int trees = 0;
  while (trees < 100) {
    oracle::RandomSpec spec;
    spec.n = pick(rng, 5, 10);
    spec.k = pick(rng, 3, spec.n - 2);
    spec.seed = rng();
    spec.max_denominator = 3;
    const WeightedTree p = oracle::random_pseudostar(spec);
    if (p.internal_edges().empty()) continue;
    ++trees;
    const KDissimilarity d = k_vector(p, spec.k);
    for (EdgeId e : p.internal_edges()) {
      const VertexId x = p.edge(e).u, y = p.edge(e).v;
      // two leaves from distinct branches at `at`, away from `away`
      const auto pair_at = [&](VertexId at, VertexId away) {
        std::vector<LeafLabel> reps;
        for (const Incidence& inc : p.incident(at))
          if (inc.vertex != away) reps.push_back(p.side(inc.edge, inc.vertex).min());
        std::shuffle(reps.begin(), reps.end(), rng);
        return std::pair{reps[0], reps[1]};
      };
      const auto [i, j] = pair_at(x, y);
      const auto [l, m] = pair_at(y, x);
      const LeafSet side_x = p.side(e, x), side_y = p.side(e, y);
      std::vector<LeafLabel> pool =
          side_x.size() >= spec.k ? (side_x - LeafSet{i, j}).members() : (side_y - LeafSet{l, m}).members();
      std::shuffle(pool.begin(), pool.end(), rng);
      LeafSet r;
      for (int c = 0; c < spec.k - 2; ++c) r.insert(pool[c]);
      ratios.push_back(quartet_edge_combination(d, i, j, l, m, r) / p.edge(e).weight);
    }
  }
  const Rational c = ratios.front();
  for (const Rational& q : ratios)
    if (q != c) out.fail("ratio varies: " + format_rational(c) + " vs " + format_rational(q));
  if (c != 1 && c != 2) out.fail("ratio " + format_rational(c) + " is neither 1 nor 2");
  if (c != kInternalEdgeFactor) out.fail("shipped factor differs from measured " + format_rational(c));
  if (out.pass) out.detail = "c = " + format_rational(c) + " on " + std::to_string(ratios.size()) + " edges";
  return out;
}

// 9: normal form does not depend on the contraction order
Outcome confluence() {
  Outcome out;
  std::mt19937_64 rng(9009);
  const auto largest_first = [](const WeightedTree& t, std::span<const EdgeId> eligible) {
    const auto key = [&](EdgeId e) {
      const Split s = t.split(e);
      return std::pair{s.smaller_size(), s.smaller_side().bits()};
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < eligible.size(); ++i)
      if (key(eligible[best]) < key(eligible[i])) best = i;
    return best;
  };
  int trees = 0;
  while (trees < 50) {
    oracle::RandomTreeSpec spec;
    spec.n = pick(rng, 6, 12);
    spec.seed = rng();
    spec.max_denominator = 3;
    spec.subdivisions = pick(rng, 0, 2);
    const int k = pick(rng, 3, spec.n - 1);
    const WeightedTree t = oracle::random_tree(spec);
    if (io_eligible_edges(essentialize(t), k).size() < 2) continue;
    ++trees;
    const WeightedTree a = pseudostar_normal_form(t, k);
    const WeightedTree b = pseudostar_normal_form(t, k, largest_first);
    if (!labeled_equal(a, b)) out.fail("tree " + std::to_string(trees) + ": orders disagree");
    if (!vectors_equal(k_vector(a, k), k_vector(t, k))) out.fail("tree " + std::to_string(trees) + ": k-weights moved");
  }
  if (out.pass) out.detail = "50 trees, both orders agree";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"eight-leaf 5-IO move", eight_leaf},
      {"round-trip reconstruction", round_trip},
      {"steiner weight vs oracle", steiner},
      {"pseudostar uniqueness", pseudostar_uniqueness},
      {"small-k uniqueness", small_k_uniqueness},
      {"positive weight range", positive_range},
      {"range dichotomy", dichotomy},
      {"internal-edge factor", edge_factor},
      {"normal form confluence", confluence},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %-28s %s  %7.2fs  %s\n", index, name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
