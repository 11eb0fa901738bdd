#include "pseudostar/reconstruction.hpp"

#include <algorithm>
#include <numeric>

#include "pseudostar/error.hpp"
#include "pseudostar/subsets.hpp"
#include "pseudostar/transforms.hpp"

namespace pseudostar {

std::optional<std::pair<LeafSet, LeafSet>> QuartetResolution::pairs() const {
  const auto [i, j, l, m] = quartet;
  switch (outcome) {
    case Pairing::IJ_LM: return std::pair{LeafSet{i, j}, LeafSet{l, m}};
    case Pairing::IL_JM: return std::pair{LeafSet{i, l}, LeafSet{j, m}};
    case Pairing::IM_JL: return std::pair{LeafSet{i, m}, LeafSet{j, l}};
    case Pairing::Star: return std::nullopt;
  }
  return std::nullopt;
}

LeafSet QuartetResolution::leaves() const {
  return LeafSet{quartet[0], quartet[1], quartet[2], quartet[3]};
}

namespace {

void require_quartet_range(const KDissimilarity& d) {
  if (d.k() < 3 || d.k() > d.n() - 2)
    throw Error(ErrorCode::BadK, "neighbour and quartet tests need 3 <= k <= n-2 (k=" +
                                     std::to_string(d.k()) + ", n=" + std::to_string(d.n()) + ")");
}

void require_leaf(const KDissimilarity& d, LeafLabel l) {
  if (l < 1 || l > d.n()) throw Error(ErrorCode::BadSubset, "leaf " + std::to_string(l) + " outside 1..n");
}

/// D over a set given as a base set plus extra leaves.
const Rational& D(const KDissimilarity& d, LeafSet base, std::initializer_list<LeafLabel> extra) {
  for (LeafLabel l : extra) base.insert(l);
  return d[base];
}

}  // namespace

Rational quartet_edge_combination(const KDissimilarity& d, LeafLabel i, LeafLabel j, LeafLabel l,
                                  LeafLabel m, LeafSet r) {
  return D(d, r, {i, m}) + D(d, r, {j, l}) - D(d, r, {i, j}) - D(d, r, {l, m});
}

bool are_neighbors(const KDissimilarity& d, LeafLabel i, LeafLabel l) {
  require_quartet_range(d);
  require_leaf(d, i);
  require_leaf(d, l);
  if (i == l) throw Error(ErrorCode::BadSubset, "a leaf is not its own neighbour");
  const LeafSet rest = d.ground().without(i).without(l);
  std::optional<Rational> first;
  const bool broken = for_each_subset(rest, d.k() - 1, [&](LeafSet x) {
    Rational diff = d[x.with(i)] - d[x.with(l)];
    if (!first) {
      first = std::move(diff);
      return false;
    }
    return diff != *first;
  });
  return !broken;
}

LeafPartition neighbor_classes(const KDissimilarity& d) {
  require_quartet_range(d);
  const int n = d.n();
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<bool>> related(n + 1, std::vector<bool>(n + 1, false));
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (are_neighbors(d, a, b)) {
        related[a][b] = related[b][a] = true;
        parent[find(a)] = find(b);
      }
    }
  }
  std::map<int, LeafSet> classes;
  for (int a = 1; a <= n; ++a) classes[find(a)].insert(a);
  LeafPartition out;
  for (const auto& [root, cls] : classes) {
    const std::vector<LeafLabel> members = cls.members();
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y)
        if (!related[members[x]][members[y]])
          throw Error(ErrorCode::NotTreelike,
                      "neighbour relation is not transitive on class " + cls.to_string());
    out.push_back(cls);
  }
  std::sort(out.begin(), out.end(), [](LeafSet a, LeafSet b) { return a.min() < b.min(); });
  return out;
}

LeafSet quartet_leaves(const LeafPartition& cherries) {
  LeafSet out;
  for (LeafSet cls : cherries) {
    out.insert(cls.min());
    if (cls.size() >= 2) out.insert(cls.without(cls.min()).min());
  }
  return out;
}

namespace {

class QuartetTester {
 public:
  QuartetTester(const KDissimilarity& d, const LeafPartition& cherries) : d_(d) {
    class_of_.assign(static_cast<std::size_t>(d.n()) + 1, -1);
    for (std::size_t c = 0; c < cherries.size(); ++c)
      cherries[c].for_each([&](LeafLabel l) {
        if (l >= 1 && l <= d.n()) class_of_[l] = static_cast<int>(c);
      });
    for (int l = 1; l <= d.n(); ++l)
      if (class_of_[l] < 0)
        throw Error(ErrorCode::BadSubset, "cherry partition does not cover leaf " + std::to_string(l));
  }

  /// Does the pairing ab|ce qualify?
  bool qualifies(LeafLabel a, LeafLabel b, LeafLabel c, LeafLabel e) const {
    return d_.k() >= 4 ? qualifies_large_k(a, b, c, e) : qualifies_k3(a, b, c, e);
  }

 private:
  bool neighbours(LeafLabel x, LeafLabel y) const { return class_of_[x] == class_of_[y]; }

  bool qualifies_large_k(LeafLabel a, LeafLabel b, LeafLabel c, LeafLabel e) const {
    // (a) the pairs sit in two different cherries
    if (neighbours(a, b) && neighbours(c, e) && !neighbours(a, c)) return true;
    // (b) the pairing sum differs from each of the two crossing sums for some set
    const LeafSet rest = d_.ground() - LeafSet{a, b, c, e};
    const int size = d_.k() - 2;
    const bool differs_from_ac_be = find_subset(rest, size, [&](LeafSet s) {
      return D(d_, s, {a, b}) + D(d_, s, {c, e}) != D(d_, s, {a, c}) + D(d_, s, {b, e});
    }).has_value();
    if (!differs_from_ac_be) return false;
    return find_subset(rest, size, [&](LeafSet r) {
      return D(d_, r, {a, b}) + D(d_, r, {c, e}) != D(d_, r, {a, e}) + D(d_, r, {b, c});
    }).has_value();
  }

  bool qualifies_k3(LeafLabel a, LeafLabel b, LeafLabel c, LeafLabel e) const {
    const LeafSet rest = d_.ground() - LeafSet{a, b, c, e};
    // (a): one r for which the inequality holds together with its three variants
    // obtained by swapping a<->b and/or c<->e
    const auto separates = [&](LeafLabel x, LeafLabel y, LeafLabel z, LeafLabel w, LeafLabel r) {
      // D_{x,y,z} + D_{w,r,z} != D_{x,r,z} + D_{w,y,z}
      return D(d_, LeafSet{}, {x, y, z}) + D(d_, LeafSet{}, {w, r, z}) !=
             D(d_, LeafSet{}, {x, r, z}) + D(d_, LeafSet{}, {w, y, z});
    };
    const bool cond_a = find_subset(rest, 1, [&](LeafSet rs) {
      const LeafLabel r = rs.min();
      return separates(a, b, c, e, r) && separates(b, a, c, e, r) && separates(a, b, e, c, r) &&
             separates(b, a, e, c, r);
    }).has_value();
    if (cond_a) return true;
    // (b): for every r both crossing sums differ from the pairing sum
    bool all = true;
    rest.for_each([&](LeafLabel r) {
      const Rational pairing = D(d_, LeafSet{}, {a, b, r}) + D(d_, LeafSet{}, {e, c, r});
      if (pairing == D(d_, LeafSet{}, {a, e, r}) + D(d_, LeafSet{}, {b, c, r}) ||
          pairing == D(d_, LeafSet{}, {a, c, r}) + D(d_, LeafSet{}, {b, e, r}))
        all = false;
    });
    return all && !rest.empty();
  }

  const KDissimilarity& d_;
  std::vector<int> class_of_;
};

}  // namespace

QuartetResolution resolve_quartet(const KDissimilarity& d, LeafLabel i, LeafLabel j, LeafLabel l,
                                  LeafLabel m, const LeafPartition& cherries) {
  require_quartet_range(d);
  for (LeafLabel x : {i, j, l, m}) require_leaf(d, x);
  if (LeafSet{i, j, l, m}.size() != 4) throw Error(ErrorCode::BadSubset, "quartet leaves must be distinct");

  const QuartetTester tester(d, cherries);
  std::vector<Pairing> hits;
  if (tester.qualifies(i, j, l, m)) hits.push_back(Pairing::IJ_LM);
  if (tester.qualifies(i, l, j, m)) hits.push_back(Pairing::IL_JM);
  if (tester.qualifies(i, m, j, l)) hits.push_back(Pairing::IM_JL);
  if (hits.size() > 1)
    throw Error(ErrorCode::Ambiguous, "several pairings qualify for quartet " +
                                          LeafSet{i, j, l, m}.to_string());
  return QuartetResolution{{i, j, l, m}, hits.empty() ? Pairing::Star : hits.front()};
}

std::vector<QuartetResolution> resolve_all_quartets(const KDissimilarity& d, const LeafPartition& cherries) {
  std::vector<QuartetResolution> out;
  for_each_subset(quartet_leaves(cherries), 4, [&](LeafSet q) {
    const auto m = q.members();
    out.push_back(resolve_quartet(d, m[0], m[1], m[2], m[3], cherries));
  });
  return out;
}

namespace {

/// Unweighted tree under construction during leaf insertion.
struct Sketch {
  std::vector<std::vector<std::size_t>> adj;
  std::vector<LeafLabel> label;  // 0 for inner vertices

  std::size_t add_vertex(LeafLabel l) {
    adj.emplace_back();
    label.push_back(l);
    return adj.size() - 1;
  }
  void link(std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  void unlink(std::size_t a, std::size_t b) {
    std::erase(adj[a], b);
    std::erase(adj[b], a);
  }
  std::vector<int> distances_from(std::size_t src) const {
    std::vector<int> dist(adj.size(), -1);
    std::vector<std::size_t> queue{src};
    dist[src] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (std::size_t w : adj[queue[h]])
        if (dist[w] < 0) {
          dist[w] = dist[queue[h]] + 1;
          queue.push_back(w);
        }
    return dist;
  }
};

/// Quartet outcome encoded as the pair containing the smallest leaf (empty for
/// a star).
using QuartetTable = std::map<std::uint64_t, LeafSet>;

LeafSet encode(const QuartetResolution& r) {
  const auto p = r.pairs();
  if (!p) return LeafSet{};
  return p->first.contains(r.leaves().min()) ? p->first : p->second;
}

LeafSet sketch_quartet(const std::map<LeafLabel, std::vector<int>>& dist,
                       const std::map<LeafLabel, std::size_t>& where, LeafSet q) {
  const auto m = q.members();
  const auto dd = [&](LeafLabel a, LeafLabel b) { return dist.at(a)[where.at(b)]; };
  const int s0 = dd(m[0], m[1]) + dd(m[2], m[3]);
  const int s1 = dd(m[0], m[2]) + dd(m[1], m[3]);
  const int s2 = dd(m[0], m[3]) + dd(m[1], m[2]);
  if (s0 < s1 && s0 < s2) return LeafSet{m[0], m[1]};
  if (s1 < s0 && s1 < s2) return LeafSet{m[0], m[2]};
  if (s2 < s0 && s2 < s1) return LeafSet{m[0], m[3]};
  return LeafSet{};
}

bool matches_all(const Sketch& s, const std::map<LeafLabel, std::size_t>& where, LeafLabel x,
                 LeafSet placed, const QuartetTable& table) {
  std::map<LeafLabel, std::vector<int>> dist;
  placed.with(x).for_each([&](LeafLabel l) { dist.emplace(l, s.distances_from(where.at(l))); });
  return !for_each_subset(placed, 3, [&](LeafSet triple) {
    const LeafSet q = triple.with(x);
    return sketch_quartet(dist, where, q) != table.at(q.bits());
  });
}

}  // namespace

Topology assemble_topology(std::span<const QuartetResolution> resolutions, const LeafPartition& cherries) {
  const LeafSet quartet_set = quartet_leaves(cherries);
  QuartetTable table;
  for (const QuartetResolution& r : resolutions) {
    if (!quartet_set.contains(r.leaves())) continue;
    table[r.leaves().bits()] = encode(r);
  }
  if (table.size() != binomial(quartet_set.size(), 4))
    throw Error(ErrorCode::Inconsistent, "resolutions do not cover every quartet of representatives");

  Sketch s;
  std::map<LeafLabel, std::size_t> where;
  const std::vector<LeafLabel> order = quartet_set.members();
  const std::size_t centre = s.add_vertex(0);
  LeafSet placed;
  for (std::size_t i = 0; i < order.size() && i < 3; ++i) {
    where[order[i]] = s.add_vertex(order[i]);
    s.link(centre, where[order[i]]);
    placed.insert(order[i]);
  }

  for (std::size_t idx = 3; idx < order.size(); ++idx) {
    const LeafLabel x = order[idx];
    std::optional<Sketch> chosen;
    int matches = 0;
    const std::size_t nv = s.adj.size();
    // hang x from an inner vertex
    for (std::size_t v = 0; v < nv; ++v) {
      if (s.label[v] != 0) continue;
      Sketch cand = s;
      auto cand_where = where;
      cand_where[x] = cand.add_vertex(x);
      cand.link(v, cand_where[x]);
      if (matches_all(cand, cand_where, x, placed, table)) {
        ++matches;
        chosen = std::move(cand);
      }
    }
    // or from the midpoint of an edge
    for (std::size_t a = 0; a < nv; ++a) {
      for (std::size_t b : s.adj[a]) {
        if (b < a) continue;
        Sketch cand = s;
        auto cand_where = where;
        const std::size_t mid = cand.add_vertex(0);
        cand.unlink(a, b);
        cand.link(a, mid);
        cand.link(mid, b);
        cand_where[x] = cand.add_vertex(x);
        cand.link(mid, cand_where[x]);
        if (matches_all(cand, cand_where, x, placed, table)) {
          ++matches;
          chosen = std::move(cand);
        }
      }
    }
    if (matches != 1)
      throw Error(ErrorCode::Inconsistent, "leaf " + std::to_string(x) + " fits " +
                                               std::to_string(matches) + " positions");
    s = std::move(*chosen);
    where[x] = s.adj.size() - 1;
    placed.insert(x);
  }

  // remaining cherry members hang from the stalk shared by the first two
  for (LeafSet cls : cherries) {
    if (cls.size() < 2) continue;
    const auto members = cls.members();
    const std::size_t stalk = s.adj[where.at(members[0])].front();
    if (s.adj[where.at(members[1])].front() != stalk)
      throw Error(ErrorCode::Inconsistent, "cherry " + cls.to_string() + " does not share a stalk");
    for (std::size_t i = 2; i < members.size(); ++i) {
      where[members[i]] = s.add_vertex(members[i]);
      s.link(stalk, where[members[i]]);
    }
  }

  std::vector<Topology::VertexPair> edges;
  std::map<VertexId, LeafLabel> labels;
  for (std::size_t v = 0; v < s.adj.size(); ++v) {
    if (s.label[v] != 0) labels.emplace(v, s.label[v]);
    else if (s.adj[v].size() < 3)
      throw Error(ErrorCode::Inconsistent, "assembled topology is not essential");
    for (std::size_t w : s.adj[v])
      if (v < w) edges.emplace_back(v, w);
  }
  return Topology(edges, labels);
}

std::map<EdgeId, Rational> internal_edge_weights(const KDissimilarity& d, const Topology& topo) {
  const WeightedTree& t = topo.shape();
  const int k = d.k();

  // smallest leaf of each branch at v, except the branch through `skip`
  const auto branch_reps = [&](VertexId v, EdgeId skip) {
    std::vector<LeafLabel> reps;
    for (const Incidence& inc : t.incident(v))
      if (inc.edge != skip) reps.push_back(t.side(inc.edge, inc.vertex).min());
    std::sort(reps.begin(), reps.end());
    return reps;
  };

  std::map<EdgeId, Rational> out;
  for (EdgeId e : t.internal_edges()) {
    const VertexId x = t.edge(e).u;
    const VertexId y = t.edge(e).v;
    const auto at_x = branch_reps(x, e);
    const auto at_y = branch_reps(y, e);
    if (at_x.size() < 2 || at_y.size() < 2)
      throw Error(ErrorCode::NoValidWitness, "internal edge endpoint is not a node");
    const LeafLabel i = at_x[0], j = at_x[1], l = at_y[0], m = at_y[1];
    const LeafSet x_side = t.side(e, x);
    const LeafSet y_side = t.side(e, y);
    std::optional<LeafSet> r;
    if (x_side.size() >= k) r = find_subset(x_side - LeafSet{i, j}, k - 2, [](LeafSet) { return true; });
    if (!r && y_side.size() >= k) r = find_subset(y_side - LeafSet{l, m}, k - 2, [](LeafSet) { return true; });
    if (!r)
      throw Error(ErrorCode::NoValidWitness,
                  "no side of split " + x_side.to_string() + "|" + y_side.to_string() + " holds k leaves");
    out[e] = quartet_edge_combination(d, i, j, l, m, *r) / kInternalEdgeFactor;
  }
  return out;
}

std::map<LeafLabel, Rational> twig_weights(const KDissimilarity& d, const Topology& topo,
                                           const std::map<EdgeId, Rational>& internal) {
  const WeightedTree& t = topo.shape();
  const int k = d.k();
  const auto inner_part = [&](LeafSet subset) -> Rational {
    Rational sum = 0;
    for (const auto& [e, w] : internal) {
      const LeafSet a = t.side(e, t.edge(e).u);
      if (a.intersects(subset) && (t.leaves() - a).intersects(subset)) sum += w;
    }
    return sum;
  };
  // twig sum of I, read off the family
  const auto twig_sum = [&](LeafSet subset) -> Rational { return d[subset] - inner_part(subset); };

  const LeafLabel ref = 1;
  std::map<LeafLabel, Rational> offset;  // w(e_i) - w(e_ref)
  offset[ref] = 0;
  for (LeafLabel i = 2; i <= d.n(); ++i) {
    std::optional<Rational> diff;
    const bool disagree = for_each_subset(d.ground().without(ref).without(i), k - 1, [&](LeafSet s) {
      Rational v = twig_sum(s.with(i)) - twig_sum(s.with(ref));
      if (!diff) {
        diff = std::move(v);
        return false;
      }
      return v != *diff;
    });
    if (disagree)
      throw Error(ErrorCode::InconsistentSystem,
                  "twig difference of leaves 1 and " + std::to_string(i) + " depends on the complement");
    offset[i] = *diff;
  }
  const LeafSet anchor = LeafSet::first_n(k);
  Rational known = twig_sum(anchor);
  anchor.for_each([&](LeafLabel i) { known -= offset[i]; });
  const Rational ref_weight = known / k;
  std::map<LeafLabel, Rational> out;
  for (const auto& [leaf, off] : offset) out[leaf] = ref_weight + off;
  return out;
}

WeightedTree star_solve(const KDissimilarity& d) {
  if (d.k() != d.n() - 1) throw Error(ErrorCode::BadK, "star solve needs k = n-1");
  Rational total = 0;
  for (const Rational& v : d.values()) total += v;
  total /= d.n() - 1;
  std::vector<Edge> edges;
  std::map<VertexId, LeafLabel> labels;
  for (LeafLabel i = 1; i <= d.n(); ++i) {
    edges.push_back(Edge{0, static_cast<VertexId>(i), total - d[d.ground().without(i)]});
    labels.emplace(static_cast<VertexId>(i), i);
  }
  return WeightedTree::build(edges, labels);
}

Verification verify_realization(const WeightedTree& t, const KDissimilarity& d) {
  if (t.leaves() != d.ground())
    throw Error(ErrorCode::ShapeMismatch, "tree leaves " + t.leaves().to_string() + " differ from 1.." +
                                              std::to_string(d.n()));
  const auto witness = first_mismatch(k_vector(t, d.k()), d);
  return Verification{!witness.has_value(), witness};
}

namespace {

WeightedTree reconstruct_general(const KDissimilarity& d) {
  const LeafPartition cherries = neighbor_classes(d);
  const std::vector<QuartetResolution> quartets = resolve_all_quartets(d, cherries);
  const Topology topo = assemble_topology(quartets, cherries);
  const auto internal = internal_edge_weights(d, topo);
  const auto twigs = twig_weights(d, topo, internal);

  std::vector<Rational> weights(topo.edge_count());
  for (const auto& [e, w] : internal) weights[e] = w;
  for (const auto& [leaf, w] : twigs) weights[topo.shape().pendant_edge(leaf)] = w;
  return topo.weighted(weights);
}

}  // namespace

ReconstructionReport reconstruct(const KDissimilarity& d) {
  if (d.k() < 3 || d.k() > d.n() - 1)
    throw Error(ErrorCode::BadK, "reconstruction needs 3 <= k <= n-1");
  WeightedTree tree = [&] {
    if (d.k() == d.n() - 1) return star_solve(d);
    try {
      return reconstruct_general(d);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::BadK) throw;
      throw Error(ErrorCode::NotTreelike, err.what());
    }
  }();
  // a zero internal weight means the family already fits a coarser pseudostar
  tree = contract_zero_internal(tree);
  const Verification v = verify_realization(tree, d);
  return ReconstructionReport{std::move(tree), v.ok, v.witness};
}

}  // namespace pseudostar
