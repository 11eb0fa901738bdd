#include "pseudostar/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "pseudostar/error.hpp"
#include "pseudostar/linear_solve.hpp"
#include "pseudostar/subsets.hpp"

namespace pseudostar::oracle {

namespace {

/// Edges on the union of all pairwise leaf paths inside `subset`.
std::vector<bool> steiner_edges(const WeightedTree& t, LeafSet subset) {
  std::vector<bool> used(t.edge_count(), false);
  const std::vector<LeafLabel> members = subset.members();
  std::vector<std::optional<Incidence>> parent(t.vertex_count());
  for (std::size_t a = 0; a + 1 < members.size(); ++a) {
    const VertexId root = t.vertex_of(members[a]);
    std::fill(parent.begin(), parent.end(), std::nullopt);
    std::vector<VertexId> queue{root};
    std::vector<bool> seen(t.vertex_count(), false);
    seen[root] = true;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (const Incidence& inc : t.incident(queue[h]))
        if (!seen[inc.vertex]) {
          seen[inc.vertex] = true;
          parent[inc.vertex] = Incidence{queue[h], inc.edge};
          queue.push_back(inc.vertex);
        }
    for (std::size_t b = a + 1; b < members.size(); ++b)
      for (VertexId v = t.vertex_of(members[b]); v != root; v = parent[v]->vertex) used[parent[v]->edge] = true;
  }
  return used;
}

/// Tiny mutable shape used while growing trees.
struct Sketch {
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<LeafLabel> label;  // per vertex, 0 for inner

  VertexId add_vertex(LeafLabel l) {
    label.push_back(l);
    return label.size() - 1;
  }
  static Sketch triple() {
    Sketch s;
    const VertexId c = s.add_vertex(0);
    for (LeafLabel l = 1; l <= 3; ++l) s.edges.emplace_back(c, s.add_vertex(l));
    return s;
  }
  Sketch hang_at_vertex(VertexId v, LeafLabel l) const {
    Sketch s = *this;
    s.edges.emplace_back(v, s.add_vertex(l));
    return s;
  }
  Sketch hang_at_edge(std::size_t e, LeafLabel l) const {
    Sketch s = *this;
    const auto [a, b] = s.edges[e];
    const VertexId mid = s.add_vertex(0);
    s.edges[e] = {a, mid};
    s.edges.emplace_back(mid, b);
    s.edges.emplace_back(mid, s.add_vertex(l));
    return s;
  }
  std::map<VertexId, LeafLabel> labels() const {
    std::map<VertexId, LeafLabel> out;
    for (VertexId v = 0; v < label.size(); ++v)
      if (label[v] != 0) out.emplace(v, label[v]);
    return out;
  }
};

Rational draw(std::mt19937_64& rng, const WeightBounds& b, int max_denominator) {
  std::uniform_int_distribution<int> den(1, max_denominator);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int q = den(rng);
    mpz_class lo = b.lo.get_num() * q;
    mpz_cdiv_q(lo.get_mpz_t(), lo.get_mpz_t(), b.lo.get_den().get_mpz_t());
    mpz_class hi = b.hi.get_num() * q;
    mpz_fdiv_q(hi.get_mpz_t(), hi.get_mpz_t(), b.hi.get_den().get_mpz_t());
    if (lo > hi) continue;
    std::uniform_int_distribution<long> num(lo.get_si(), hi.get_si());
    Rational out(num(rng), q);
    out.canonicalize();
    return out;
  }
  return b.lo;
}

void check_bounds(const WeightBounds& b, const char* what) {
  if (b.lo > b.hi) throw Error(ErrorCode::InfeasibleSpec, std::string(what) + " bounds are empty");
  if (abs(b.lo) > 1'000'000'000 || abs(b.hi) > 1'000'000'000)
    throw Error(ErrorCode::InfeasibleSpec, std::string(what) + " bounds exceed 1e9");
}

Sketch grow(std::mt19937_64& rng, int n, double multifurcation) {
  Sketch s = Sketch::triple();
  std::bernoulli_distribution at_node(std::clamp(multifurcation, 0.0, 1.0));
  for (LeafLabel l = 4; l <= n; ++l) {
    if (at_node(rng)) {
      std::vector<VertexId> inner;
      for (VertexId v = 0; v < s.label.size(); ++v)
        if (s.label[v] == 0) inner.push_back(v);
      s = s.hang_at_vertex(inner[std::uniform_int_distribution<std::size_t>(0, inner.size() - 1)(rng)], l);
    } else {
      s = s.hang_at_edge(std::uniform_int_distribution<std::size_t>(0, s.edges.size() - 1)(rng), l);
    }
  }
  return s;
}

/// Shuffled labels and fresh weights on the shape of t.
WeightedTree dress(std::mt19937_64& rng, const WeightedTree& t, const WeightBounds& twig,
                   const WeightBounds& internal, int max_denominator) {
  std::vector<LeafLabel> perm(static_cast<std::size_t>(t.leaf_count()));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges = t.edges();
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (!t.is_internal(e)) {
      edges[e].weight = draw(rng, twig, max_denominator);
      continue;
    }
    Rational w = draw(rng, internal, max_denominator);
    for (int attempt = 0; w == 0; ++attempt) {
      if (attempt == 1000) throw Error(ErrorCode::InfeasibleSpec, "internal weights keep landing on zero");
      w = draw(rng, internal, max_denominator);
    }
    edges[e].weight = w;
  }
  std::map<VertexId, LeafLabel> labels;
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (const auto l = t.label(v)) labels.emplace(v, perm[static_cast<std::size_t>(*l - 1)]);
  return WeightedTree::build(edges, labels);
}

WeightedTree zero_tree(const Sketch& s) {
  std::vector<Edge> edges;
  for (const auto& [u, v] : s.edges) edges.push_back(Edge{u, v, Rational(0)});
  return WeightedTree::build(edges, s.labels());
}

/// Does target lie in the span of vectors? Exact elimination.
bool in_span(const std::vector<std::vector<Rational>>& vectors, std::vector<Rational> target) {
  std::vector<std::vector<Rational>> basis;  // echelon rows with pivot positions
  std::vector<std::size_t> pivots;
  for (std::vector<Rational> v : vectors) {
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (v[pivots[b]] != 0) {
        const Rational f = v[pivots[b]] / basis[b][pivots[b]];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * basis[b][i];
      }
    const auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (nz == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    basis.push_back(std::move(v));
  }
  for (std::size_t b = 0; b < basis.size(); ++b)
    if (target[pivots[b]] != 0) {
      const Rational f = target[pivots[b]] / basis[b][pivots[b]];
      for (std::size_t i = 0; i < target.size(); ++i) target[i] -= f * basis[b][i];
    }
  return std::all_of(target.begin(), target.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

Rational brute_force_steiner(const WeightedTree& t, LeafSet subset) {
  if (subset.empty() || !t.leaves().contains(subset))
    throw Error(ErrorCode::BadSubset, "subset " + subset.to_string() + " is not a non-empty set of leaves");
  const std::vector<bool> used = steiner_edges(t, subset);
  Rational sum = 0;
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    if (used[e]) sum += t.edge(e).weight;
  return sum;
}

WeightedTree random_pseudostar(const RandomSpec& spec) {
  if (spec.n < 3 || spec.n > LeafSet::kMaxLabel)
    throw Error(ErrorCode::InfeasibleSpec, "n must lie in 3..64");
  if (spec.k < 2 || spec.k > spec.n - 1) throw Error(ErrorCode::InfeasibleSpec, "k must lie in 2..n-1");
  if (spec.max_denominator < 1) throw Error(ErrorCode::InfeasibleSpec, "max_denominator must be positive");
  check_bounds(spec.twig, "twig");
  check_bounds(spec.internal, "internal");
  if (spec.internal.lo == 0 && spec.internal.hi == 0)
    throw Error(ErrorCode::InfeasibleSpec, "internal weights are pinned to zero");

  std::mt19937_64 rng(spec.seed);
  WeightedTree t = zero_tree(grow(rng, spec.n, spec.multifurcation));
  while (true) {
    std::optional<EdgeId> bad;
    for (EdgeId e = 0; e < t.edge_count() && !bad; ++e)
      if (t.split(e).larger_size() < spec.k) bad = e;
    if (!bad) break;
    t = contract_edge(t, *bad);
  }
  return dress(rng, t, spec.twig, spec.internal, spec.max_denominator);
}

WeightedTree random_tree(const RandomTreeSpec& spec) {
  if (spec.n < 3 || spec.n > LeafSet::kMaxLabel)
    throw Error(ErrorCode::InfeasibleSpec, "n must lie in 3..64");
  if (spec.max_denominator < 1) throw Error(ErrorCode::InfeasibleSpec, "max_denominator must be positive");
  if (spec.subdivisions < 0) throw Error(ErrorCode::InfeasibleSpec, "subdivisions must be non-negative");
  check_bounds(spec.twig, "twig");
  check_bounds(spec.internal, "internal");
  if (spec.internal.lo == 0 && spec.internal.hi == 0 && spec.n > 3)
    throw Error(ErrorCode::InfeasibleSpec, "internal weights are pinned to zero");

  std::mt19937_64 rng(spec.seed);
  WeightedTree t = dress(rng, zero_tree(grow(rng, spec.n, spec.multifurcation)), spec.twig, spec.internal,
                         spec.max_denominator);
  for (int s = 0; s < spec.subdivisions; ++s) {
    std::vector<Edge> edges = t.edges();
    const EdgeId e = std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng);
    const Rational part = edges[e].weight * std::uniform_int_distribution<int>(1, 7)(rng) / 8;
    const VertexId mid = t.vertex_count();
    const VertexId far = edges[e].v;
    edges.push_back(Edge{mid, far, edges[e].weight - part});
    edges[e].v = mid;
    edges[e].weight = part;
    std::map<VertexId, LeafLabel> labels;
    for (VertexId v = 0; v < t.vertex_count(); ++v)
      if (const auto l = t.label(v)) labels.emplace(v, *l);
    t = WeightedTree::build(edges, labels);
  }
  return t;
}

std::vector<Topology> enumerate_topologies(int n) {
  if (n < 3 || n > 9) throw Error(ErrorCode::TooLarge, "topology enumeration is limited to 3 <= n <= 9");
  std::vector<Sketch> level{Sketch::triple()};
  for (LeafLabel l = 4; l <= n; ++l) {
    std::vector<Sketch> next;
    for (const Sketch& s : level) {
      for (VertexId v = 0; v < s.label.size(); ++v)
        if (s.label[v] == 0) next.push_back(s.hang_at_vertex(v, l));
      for (std::size_t e = 0; e < s.edges.size(); ++e) next.push_back(s.hang_at_edge(e, l));
    }
    level = std::move(next);
  }
  std::vector<std::pair<std::string, Topology>> keyed;
  keyed.reserve(level.size());
  for (const Sketch& s : level) {
    Topology t(s.edges, s.labels());
    std::string key = t.canonical_form();
    keyed.emplace_back(std::move(key), std::move(t));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  std::vector<Topology> out;
  out.reserve(keyed.size());
  for (auto& [key, t] : keyed) out.push_back(std::move(t));
  return out;
}

bool Realization::contains(const WeightedTree& t) const {
  if (t.leaves() != sample.leaves() || t.edge_count() != sample.edge_count()) return false;
  if (canonical_form(t, false) != canonical_form(sample, false)) return false;
  std::map<std::uint64_t, EdgeId> by_split;
  for (EdgeId e = 0; e < t.edge_count(); ++e) by_split.emplace(t.split(e).side_a.bits(), e);
  std::vector<Rational> delta(sample.edge_count());
  for (EdgeId e = 0; e < sample.edge_count(); ++e) {
    const auto it = by_split.find(sample.split(e).side_a.bits());
    if (it == by_split.end()) return false;
    delta[e] = t.edge(it->second).weight - sample.edge(e).weight;
  }
  return in_span(directions, std::move(delta));
}

std::vector<Realization> brute_force_realizations(const KDissimilarity& d, bool positive_only,
                                                  std::span<const Topology> topologies) {
  std::vector<std::pair<std::string, Realization>> found;
  const std::vector<Rational> rhs(d.values().begin(), d.values().end());
  for (const Topology& topo : topologies) {
    if (topo.leaves() != d.ground()) continue;
    const WeightedTree& shape = topo.shape();
    IntMatrix a(d.size(), std::vector<std::int64_t>(shape.edge_count(), 0));
    for (std::size_t r = 0; r < d.size(); ++r) {
      const std::vector<bool> used = steiner_edges(shape, d.subset_at(r));
      for (EdgeId e = 0; e < shape.edge_count(); ++e) a[r][e] = used[e] ? 1 : 0;
    }
    auto sol = solve_affine(a, rhs);
    if (!sol) continue;
    std::vector<Rational> point = sol->particular;
    if (positive_only) {
      auto positive = strictly_positive_point(*sol);
      if (!positive) continue;
      point = std::move(*positive);
    }
    found.emplace_back(topo.canonical_form(), Realization{topo.weighted(point), std::move(sol->kernel)});
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Realization> out;
  out.reserve(found.size());
  for (auto& [key, r] : found) out.push_back(std::move(r));
  return out;
}

std::vector<Realization> brute_force_realizations(const KDissimilarity& d, bool positive_only,
                                                  const TopologyFilter& filter) {
  const std::vector<Topology> all = enumerate_topologies(d.n());
  if (!filter) return brute_force_realizations(d, positive_only, std::span<const Topology>(all));
  std::vector<Topology> kept;
  for (const Topology& t : all)
    if (filter(t)) kept.push_back(t);
  return brute_force_realizations(d, positive_only, std::span<const Topology>(kept));
}

}  // namespace pseudostar::oracle
