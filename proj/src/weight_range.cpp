#include "pseudostar/weight_range.hpp"

#include <algorithm>

#include "pseudostar/error.hpp"

namespace pseudostar {

std::string ExtendedRational::to_string() const {
  switch (kind) {
    case Kind::NegInfinity: return "-inf";
    case Kind::PosInfinity: return "+inf";
    case Kind::Finite: break;
  }
  return format_rational(value);
}

namespace {

struct Branch {
  VertexId neighbour;
  int leaves;
};

std::vector<Branch> branches_at(const WeightedTree& p, VertexId v) {
  std::vector<Branch> out;
  for (const Incidence& inc : p.incident(v)) out.push_back({inc.vertex, p.side(inc.edge, inc.vertex).size()});
  return out;
}

/// Walks the bipartitions of `branches` whose blocks both carry fewer than k
/// leaves. The first branch always stays in the kept block.
template <class F>
bool walk_bipartitions(const std::vector<Branch>& branches, int k, F&& visit) {
  std::vector<bool> moved(branches.size(), false);
  int kept_sum = 0, moved_sum = 0;
  const auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (kept_sum >= k || moved_sum >= k) return false;
    if (i == branches.size()) return moved_sum > 0 && visit(moved);
    kept_sum += branches[i].leaves;
    if (self(self, i + 1)) return true;
    kept_sum -= branches[i].leaves;
    if (i == 0) return false;
    moved[i] = true;
    moved_sum += branches[i].leaves;
    if (self(self, i + 1)) return true;
    moved_sum -= branches[i].leaves;
    moved[i] = false;
    return false;
  };
  return rec(rec, 0);
}

void require_pseudostar(const WeightedTree& p, int k) {
  if (k < 3 || k > p.leaf_count() - 1) throw Error(ErrorCode::BadK, "weight range needs 3 <= k <= n-1");
  if (!p.is_essential() || !p.is_pseudostar(k))
    throw Error(ErrorCode::NotPseudostar, "tree is not an essential pseudostar of kind (n, k)");
  for (EdgeId e : p.internal_edges())
    if (p.edge(e).weight == 0)
      throw Error(ErrorCode::NotPseudostar, "pseudostar has an internal edge of weight 0");
}

WeightRange point(const Rational& total) {
  return WeightRange{ExtendedRational::finite(total), ExtendedRational::finite(total), true, true, true};
}

}  // namespace

bool oi_feasible(const WeightedTree& p, int k) {
  const int n = p.leaf_count();
  for (VertexId v = 0; v < p.vertex_count(); ++v) {
    if (p.degree(v) < 2) continue;
    // subset sums of branch leaf counts; want n-k < a < k
    std::vector<bool> reachable(static_cast<std::size_t>(n) + 1, false);
    reachable[0] = true;
    for (const Branch& b : branches_at(p, v))
      for (int s = n; s >= b.leaves; --s)
        if (reachable[s - b.leaves]) reachable[s] = true;
    for (int a = std::max(1, n - k + 1); a < k && a < n; ++a)
      if (reachable[a]) return true;
  }
  return false;
}

std::vector<OiInsertion> oi_sites(const WeightedTree& p, int k, std::size_t limit) {
  std::vector<OiInsertion> out;
  for (VertexId v = 0; v < p.vertex_count() && out.size() < limit; ++v) {
    if (p.degree(v) < 2) continue;
    const auto branches = branches_at(p, v);
    walk_bipartitions(branches, k, [&](const std::vector<bool>& moved) {
      OiInsertion ins;
      ins.at_vertex = v;
      for (std::size_t i = 0; i < branches.size(); ++i)
        (moved[i] ? ins.moved : ins.kept).push_back(branches[i].neighbour);
      ins.new_edge_weight = 0;
      out.push_back(std::move(ins));
      return out.size() >= limit;
    });
  }
  return out;
}

WeightRange range_positive(const WeightedTree& p, int k) {
  require_pseudostar(p, k);
  for (const Edge& e : p.edges())
    if (e.weight <= 0) throw Error(ErrorCode::NotPositive, "pseudostar has a non-positive edge weight");
  const Rational total = p.total_weight();
  if (!oi_feasible(p, k)) return point(total);
  Rational lightest = p.edge(p.pendant_edge(p.leaves().min())).weight;
  p.leaves().for_each([&](LeafLabel l) { lightest = std::min(lightest, p.edge(p.pendant_edge(l)).weight); });
  const Rational inf = total - Rational(p.leaf_count() - k) * lightest;
  return WeightRange{ExtendedRational::finite(total), ExtendedRational::finite(inf), true, false, false};
}

WeightRange range_general(const WeightedTree& p, int k) {
  require_pseudostar(p, k);
  if (!oi_feasible(p, k)) return point(p.total_weight());
  return WeightRange{ExtendedRational::pos_infinity(), ExtendedRational::neg_infinity(), false, false, false};
}

std::string format_range(const WeightRange& r) {
  const auto attained = [](bool a) { return a ? " (attained)" : " (not attained)"; };
  return "sup=" + r.supremum.to_string() + attained(r.sup_attained) + ", inf=" + r.infimum.to_string() +
         attained(r.inf_attained) + "\nsingleton=" + (r.singleton ? "yes" : "no") + "\n";
}

}  // namespace pseudostar
