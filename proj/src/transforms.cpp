#include "pseudostar/transforms.hpp"

#include <algorithm>
#include <set>

#include "pseudostar/error.hpp"

namespace pseudostar {

namespace {

bool eligible(const WeightedTree& t, EdgeId e, int k) { return t.split(e).larger_size() < k; }

/// Adds `delta` to the pendant edge of every leaf.
WeightedTree shift_twigs(const WeightedTree& t, const Rational& delta) {
  std::vector<Rational> w = t.weights();
  t.leaves().for_each([&](LeafLabel l) { w[t.pendant_edge(l)] += delta; });
  return t.with_weights(w);
}

}  // namespace

std::vector<EdgeId> io_eligible_edges(const WeightedTree& t, int k) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    if (eligible(t, e, k)) out.push_back(e);
  return out;
}

WeightedTree k_io(const WeightedTree& t, EdgeId e, int k) {
  if (e >= t.edge_count()) throw Error(ErrorCode::NotIoEligible, "no such edge");
  if (!eligible(t, e, k)) {
    const Split s = t.split(e);
    throw Error(ErrorCode::NotIoEligible, "split " + s.side_a.to_string() + "|" + s.side_b.to_string() +
                                              " has a side with at least k leaves");
  }
  const Rational y = t.edge(e).weight;
  return shift_twigs(contract_edge(t, e), y / k);
}

std::pair<LeafSet, LeafSet> insertion_blocks(const WeightedTree& t, const OiInsertion& ins) {
  if (ins.at_vertex >= t.vertex_count()) throw Error(ErrorCode::BadInsertion, "no such vertex");
  std::set<VertexId> neighbours;
  for (const Incidence& inc : t.incident(ins.at_vertex)) neighbours.insert(inc.vertex);
  std::set<VertexId> seen;
  const auto block = [&](const std::vector<VertexId>& names) {
    LeafSet out;
    for (VertexId w : names) {
      if (!neighbours.contains(w))
        throw Error(ErrorCode::BadInsertion, "vertex " + std::to_string(w) + " is not adjacent to the insertion point");
      if (!seen.insert(w).second) throw Error(ErrorCode::BadInsertion, "branch named twice");
      out = out | t.side(*t.find_edge(ins.at_vertex, w), w);
    }
    return out;
  };
  const LeafSet kept = block(ins.kept);
  const LeafSet moved = block(ins.moved);
  if (ins.kept.empty() || ins.moved.empty()) throw Error(ErrorCode::BadInsertion, "empty block");
  if (seen.size() != neighbours.size())
    throw Error(ErrorCode::BadInsertion, "blocks do not cover every branch");
  return {kept, moved};
}

WeightedTree k_oi(const WeightedTree& t, const OiInsertion& ins, int k, bool require_positive) {
  const auto [kept, moved] = insertion_blocks(t, ins);
  if (kept.size() >= k || moved.size() >= k)
    throw Error(ErrorCode::BadInsertion, "block " + (kept.size() >= k ? kept : moved).to_string() +
                                             " carries at least k leaves");
  const Rational delta = ins.new_edge_weight / k;
  if (require_positive) {
    for (LeafLabel l : t.leaves().members())
      if (t.edge(t.pendant_edge(l)).weight - delta <= 0)
        throw Error(ErrorCode::NegativeTwig, "twig of leaf " + std::to_string(l) + " would drop to " +
                                                 format_rational(t.edge(t.pendant_edge(l)).weight - delta));
  }

  const VertexId fresh = t.vertex_count();
  const std::set<VertexId> moved_set(ins.moved.begin(), ins.moved.end());
  std::vector<Edge> edges;
  for (const Edge& e : t.edges()) {
    Edge copy = e;
    if (copy.u == ins.at_vertex && moved_set.contains(copy.v)) copy.u = fresh;
    else if (copy.v == ins.at_vertex && moved_set.contains(copy.u)) copy.v = fresh;
    edges.push_back(std::move(copy));
  }
  edges.push_back(Edge{ins.at_vertex, fresh, ins.new_edge_weight});
  std::map<VertexId, LeafLabel> labels;
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (const auto l = t.label(v)) labels.emplace(v, *l);
  return shift_twigs(WeightedTree::build(edges, labels), -delta);
}

WeightedTree contract_zero_internal(const WeightedTree& t) {
  WeightedTree cur = t;
  while (true) {
    const auto internal = cur.internal_edges();
    const auto zero = std::find_if(internal.begin(), internal.end(),
                                   [&](EdgeId e) { return cur.edge(e).weight == 0; });
    if (zero == internal.end()) return cur;
    cur = contract_edge(cur, *zero);
  }
}

std::size_t smallest_split_first(const WeightedTree& t, std::span<const EdgeId> eligible_edges) {
  const auto key = [&](EdgeId e) {
    const Split s = t.split(e);
    return std::pair{s.smaller_size(), s.smaller_side().bits()};
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < eligible_edges.size(); ++i)
    if (key(eligible_edges[i]) < key(eligible_edges[best])) best = i;
  return best;
}

WeightedTree pseudostar_normal_form(const WeightedTree& t, int k) {
  return pseudostar_normal_form(t, k, smallest_split_first);
}

WeightedTree pseudostar_normal_form(const WeightedTree& t, int k, const EdgeChooser& choose) {
  if (k < 3 || k > t.leaf_count() - 1)
    throw Error(ErrorCode::BadK, "normal form needs 3 <= k <= n-1");
  WeightedTree cur = contract_zero_internal(essentialize(t));
  while (true) {
    const auto candidates = io_eligible_edges(cur, k);
    if (candidates.empty()) return cur;
    const std::size_t pick = choose(cur, candidates);
    if (pick >= candidates.size()) throw Error(ErrorCode::NotIoEligible, "edge chooser returned a bad index");
    cur = contract_zero_internal(essentialize(k_io(cur, candidates[pick], k)));
  }
}

}  // namespace pseudostar
