#include "pseudostar/tree.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pseudostar/error.hpp"

namespace pseudostar {

WeightedTree WeightedTree::build(const std::vector<Edge>& edges,
                                 const std::map<VertexId, LeafLabel>& labels) {
  if (edges.empty()) throw Error(ErrorCode::NotATree, "a tree needs at least one edge");

  std::set<VertexId> ids;
  for (const Edge& e : edges) {
    if (e.u == e.v) throw Error(ErrorCode::NotATree, "self-loop at vertex " + std::to_string(e.u));
    ids.insert(e.u);
    ids.insert(e.v);
  }
  std::map<VertexId, VertexId> compact;
  for (VertexId id : ids) compact.emplace(id, compact.size());

  WeightedTree t;
  t.adjacency_.resize(ids.size());
  t.label_of_.assign(ids.size(), 0);
  t.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    const EdgeId id = t.edges_.size();
    const VertexId u = compact[e.u];
    const VertexId v = compact[e.v];
    t.edges_.push_back(Edge{u, v, e.weight});
    t.edges_.back().weight.canonicalize();
    t.adjacency_[u].push_back({v, id});
    t.adjacency_[v].push_back({u, id});
  }
  if (t.edges_.size() + 1 != t.adjacency_.size())
    throw Error(ErrorCode::NotATree, "edge count must be vertex count minus one");

  // connectivity (with |E| = |V| - 1 this also rules out cycles)
  std::vector<bool> seen(t.vertex_count(), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : t.adjacency_[v]) {
      if (!seen[inc.vertex]) {
        seen[inc.vertex] = true;
        ++reached;
        stack.push_back(inc.vertex);
      }
    }
  }
  if (reached != t.vertex_count()) throw Error(ErrorCode::NotATree, "edge list is disconnected or cyclic");

  for (const auto& [raw, label] : labels) {
    const auto it = compact.find(raw);
    if (it == compact.end())
      throw Error(ErrorCode::BadLabeling, "labelled vertex " + std::to_string(raw) + " has no edge");
    if (!LeafSet::valid_label(label))
      throw Error(ErrorCode::BadLabeling, "label " + std::to_string(label) + " outside 1..64");
    if (t.vertex_of_.count(label) != 0)
      throw Error(ErrorCode::BadLabeling, "duplicate label " + std::to_string(label));
    if (t.degree(it->second) != 1)
      throw Error(ErrorCode::BadLabeling, "label " + std::to_string(label) + " on a non-leaf vertex");
    t.label_of_[it->second] = label;
    t.vertex_of_.emplace(label, it->second);
    t.leaves_.insert(label);
  }
  for (VertexId v = 0; v < t.vertex_count(); ++v) {
    if (t.degree(v) == 1 && t.label_of_[v] == 0)
      throw Error(ErrorCode::BadLabeling, "unlabelled leaf vertex");
  }
  t.index();
  return t;
}

void WeightedTree::index() {
  // leaf masks below each vertex, rooted at vertex 0
  const std::size_t nv = vertex_count();
  std::vector<VertexId> parent(nv, nv);
  std::vector<EdgeId> parent_edge(nv, edges_.size());
  std::vector<VertexId> order;
  order.reserve(nv);
  std::vector<VertexId> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const Incidence& inc : adjacency_[v]) {
      if (inc.edge == parent_edge[v]) continue;
      parent[inc.vertex] = v;
      parent_edge[inc.vertex] = inc.edge;
      stack.push_back(inc.vertex);
    }
  }
  std::vector<LeafSet> below(nv);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (label_of_[v] != 0) below[v].insert(label_of_[v]);
    if (v != 0) below[parent[v]] = below[parent[v]] | below[v];
  }
  u_side_.resize(edges_.size());
  for (VertexId v = 1; v < nv; ++v) {
    const EdgeId e = parent_edge[v];
    u_side_[e] = edges_[e].u == v ? below[v] : leaves_ - below[v];
  }

  twig_edge_.assign(edges_.size(), false);
  twigs_.clear();
  for (const auto& [label, leaf] : vertex_of_) {
    Twig tw{label, Rational(0), {}, leaf};
    VertexId prev = leaf;
    Incidence step = adjacency_[leaf].front();
    while (true) {
      tw.edges.push_back(step.edge);
      tw.path_weight += edges_[step.edge].weight;
      twig_edge_[step.edge] = true;
      const VertexId cur = step.vertex;
      if (degree(cur) != 2) {
        tw.node = cur;
        break;
      }
      const auto& adj = adjacency_[cur];
      step = adj[0].vertex == prev ? adj[1] : adj[0];
      prev = cur;
    }
    twigs_.push_back(std::move(tw));
  }
}

std::optional<LeafLabel> WeightedTree::label(VertexId v) const {
  const LeafLabel l = label_of_.at(v);
  if (l == 0) return std::nullopt;
  return l;
}

VertexId WeightedTree::vertex_of(LeafLabel l) const {
  const auto it = vertex_of_.find(l);
  if (it == vertex_of_.end()) throw Error(ErrorCode::BadSubset, "no leaf labelled " + std::to_string(l));
  return it->second;
}

std::optional<EdgeId> WeightedTree::find_edge(VertexId a, VertexId b) const {
  for (const Incidence& inc : adjacency_.at(a))
    if (inc.vertex == b) return inc.edge;
  return std::nullopt;
}

VertexId WeightedTree::other_end(EdgeId e, VertexId v) const {
  const Edge& ed = edges_.at(e);
  return ed.u == v ? ed.v : ed.u;
}

LeafSet WeightedTree::side(EdgeId e, VertexId endpoint) const {
  const Edge& ed = edges_.at(e);
  return endpoint == ed.u ? u_side_[e] : leaves_ - u_side_[e];
}

Split WeightedTree::split(EdgeId e) const {
  const LeafSet a = u_side_.at(e);
  const LeafSet b = leaves_ - a;
  if (a.contains(leaves_.min())) return Split{a, b};
  return Split{b, a};
}

const Twig& WeightedTree::twig(LeafLabel l) const {
  for (const Twig& tw : twigs_)
    if (tw.leaf == l) return tw;
  throw Error(ErrorCode::BadSubset, "no leaf labelled " + std::to_string(l));
}

EdgeId WeightedTree::pendant_edge(LeafLabel l) const { return adjacency_[vertex_of(l)].front().edge; }

std::vector<EdgeId> WeightedTree::internal_edges() const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (!twig_edge_[e]) out.push_back(e);
  return out;
}

bool WeightedTree::is_essential() const {
  return std::none_of(adjacency_.begin(), adjacency_.end(),
                      [](const auto& adj) { return adj.size() == 2; });
}

bool WeightedTree::is_pseudostar(int k) const {
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (split(e).larger_size() < k) return false;
  return true;
}

Rational WeightedTree::total_weight() const {
  Rational sum = 0;
  for (const Edge& e : edges_) sum += e.weight;
  return sum;
}

std::vector<Rational> WeightedTree::weights() const {
  std::vector<Rational> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(e.weight);
  return out;
}

WeightedTree WeightedTree::with_weights(std::span<const Rational> weights) const {
  if (weights.size() != edges_.size())
    throw Error(ErrorCode::ShapeMismatch, "weight count differs from edge count");
  WeightedTree t = *this;
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    t.edges_[e].weight = weights[e];
    t.edges_[e].weight.canonicalize();
  }
  for (Twig& tw : t.twigs_) {
    tw.path_weight = 0;
    for (EdgeId e : tw.edges) tw.path_weight += t.edges_[e].weight;
  }
  return t;
}

namespace {

std::map<VertexId, LeafLabel> label_map(const WeightedTree& t) {
  std::map<VertexId, LeafLabel> out;
  for (VertexId v = 0; v < t.vertex_count(); ++v)
    if (auto l = t.label(v)) out.emplace(v, *l);
  return out;
}

}  // namespace

WeightedTree restrict_to(const WeightedTree& t, LeafSet s) {
  if (s.size() < 2) throw Error(ErrorCode::BadSubset, "restriction needs at least two leaves");
  if (!t.leaves().contains(s)) throw Error(ErrorCode::BadSubset, s.to_string() + " not within the leaf set");

  const std::size_t nv = t.vertex_count();
  std::vector<std::size_t> degree(nv);
  std::vector<bool> removed(nv, false);
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < nv; ++v) {
    degree[v] = t.degree(v);
    const auto l = t.label(v);
    if (l && !s.contains(*l)) queue.push_back(v);
  }
  // peel leaves outside s until every remaining leaf belongs to s
  while (!queue.empty()) {
    const VertexId v = queue.back();
    queue.pop_back();
    removed[v] = true;
    for (const Incidence& inc : t.incident(v)) {
      if (removed[inc.vertex]) continue;
      if (--degree[inc.vertex] == 1 && !t.label(inc.vertex)) queue.push_back(inc.vertex);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : t.edges())
    if (!removed[e.u] && !removed[e.v]) edges.push_back(e);
  std::map<VertexId, LeafLabel> labels;
  s.for_each([&](LeafLabel l) { labels.emplace(t.vertex_of(l), l); });
  return WeightedTree::build(edges, labels);
}

WeightedTree essentialize(const WeightedTree& t) {
  const std::size_t nv = t.vertex_count();
  std::vector<bool> suppressed(nv, false);
  for (VertexId v = 0; v < nv; ++v) suppressed[v] = t.degree(v) == 2;

  std::vector<Edge> edges;
  std::vector<bool> used(t.edge_count(), false);
  for (VertexId start = 0; start < nv; ++start) {
    if (suppressed[start]) continue;
    for (const Incidence& first : t.incident(start)) {
      if (used[first.edge]) continue;
      Rational w = 0;
      VertexId prev = start;
      Incidence step = first;
      while (true) {
        used[step.edge] = true;
        w += t.edge(step.edge).weight;
        if (!suppressed[step.vertex]) break;
        const auto adj = t.incident(step.vertex);
        const Incidence next = adj[0].vertex == prev ? adj[1] : adj[0];
        prev = step.vertex;
        step = next;
      }
      edges.push_back(Edge{start, step.vertex, w});
    }
  }
  return WeightedTree::build(edges, label_map(t));
}

WeightedTree contract_edge(const WeightedTree& t, EdgeId e) {
  if (e >= t.edge_count()) throw Error(ErrorCode::NotInternal, "no such edge");
  if (!t.is_internal(e)) throw Error(ErrorCode::NotInternal, "edge lies on a twig");
  const VertexId keep = t.edge(e).u;
  const VertexId gone = t.edge(e).v;
  std::vector<Edge> edges;
  for (EdgeId f = 0; f < t.edge_count(); ++f) {
    if (f == e) continue;
    Edge ed = t.edge(f);
    if (ed.u == gone) ed.u = keep;
    if (ed.v == gone) ed.v = keep;
    edges.push_back(ed);
  }
  return WeightedTree::build(edges, label_map(t));
}

namespace {

std::string encode(const WeightedTree& t, VertexId v, EdgeId via, bool with_weights) {
  std::vector<std::string> children;
  for (const Incidence& inc : t.incident(v)) {
    if (inc.edge == via) continue;
    std::string child = encode(t, inc.vertex, inc.edge, with_weights);
    if (with_weights) child += ":" + format_rational(t.edge(inc.edge).weight);
    children.push_back(std::move(child));
  }
  std::sort(children.begin(), children.end());
  std::string out;
  if (auto l = t.label(v)) out = std::to_string(*l);
  if (!children.empty()) {
    out += '(';
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i != 0) out += ',';
      out += children[i];
    }
    out += ')';
  }
  return out;
}

}  // namespace

std::string canonical_form(const WeightedTree& t, bool with_weights) {
  const VertexId root = t.vertex_of(t.leaves().min());
  return encode(t, root, t.edge_count(), with_weights);
}

bool labeled_equal(const WeightedTree& a, const WeightedTree& b) {
  if (a.leaves() != b.leaves() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a, true) == canonical_form(b, true);
}

std::vector<LeafSet> complete_cherries(const WeightedTree& t) {
  if (!t.is_essential()) throw Error(ErrorCode::NotEssential, "complete cherries need an essential tree");
  std::map<VertexId, LeafSet> by_stalk;
  std::vector<LeafSet> out;
  t.leaves().for_each([&](LeafLabel l) {
    const VertexId attach = t.incident(t.vertex_of(l)).front().vertex;
    if (t.is_node(attach)) {
      by_stalk[attach].insert(l);
    } else {
      out.push_back(LeafSet{l});
    }
  });
  for (const auto& [stalk, cls] : by_stalk) out.push_back(cls);
  std::sort(out.begin(), out.end(), [](LeafSet a, LeafSet b) { return a.min() < b.min(); });
  return out;
}

}  // namespace pseudostar
