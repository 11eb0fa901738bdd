#include "pseudostar/newick.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "pseudostar/error.hpp"

namespace pseudostar {

namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  WeightedTree parse() {
    skip_space();
    const VertexId root = new_vertex();
    if (peek() == '(') {
      const std::size_t children = parse_children(root);
      skip_space();
      if (at_label_start()) {
        if (children != 1) fail("only a root with a single child may carry a label");
        labels_.emplace(root, parse_label());
      }
    } else {
      fail("expected '('");
    }
    skip_space();
    if (peek() == ':') fail("the root has no edge to carry a length");
    expect(';');
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return WeightedTree::build(edges_, labels_);
  }

 private:
  /// '(' child (',' child)* ')' with children hung below `parent`.
  std::size_t parse_children(VertexId parent) {
    expect('(');
    std::size_t count = 0;
    while (true) {
      skip_space();
      parse_child(parent);
      ++count;
      skip_space();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      return count;
    }
  }

  void parse_child(VertexId parent) {
    const VertexId v = new_vertex();
    if (peek() == '(') {
      parse_children(v);
      skip_space();
      if (at_label_start()) fail("internal vertices cannot be labelled");
    } else if (at_label_start()) {
      labels_.emplace(v, parse_label());
    } else {
      fail("expected a leaf label or '('");
    }
    skip_space();
    expect(':');
    skip_space();
    edges_.push_back(Edge{parent, v, parse_length()});
  }

  bool at_label_start() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  LeafLabel parse_label() {
    const std::size_t start = pos_;
    while (at_label_start()) ++pos_;
    LeafLabel value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || !LeafSet::valid_label(value)) {
      pos_ = start;
      fail("leaf labels must be integers in 1..64");
    }
    return value;
  }

  Rational parse_length() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                                   text_[pos_] == '/' || text_[pos_] == '-' || text_[pos_] == '+'))
      ++pos_;
    const auto value = parse_rational(text_.substr(start, pos_ - start));
    if (!value) {
      pos_ = start;
      fail("malformed branch length");
    }
    return *value;
  }

  VertexId new_vertex() { return next_id_++; }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input: " + what, line, column);
    throw ParseError(what, line, column);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  VertexId next_id_ = 0;
  std::vector<Edge> edges_;
  std::map<VertexId, LeafLabel> labels_;
};

struct Writer {
  const WeightedTree& t;
  std::vector<LeafLabel> smallest;  // smallest leaf below each vertex, for the chosen root

  void compute_smallest(VertexId v, VertexId from) {
    LeafLabel best = t.label(v).value_or(LeafSet::kMaxLabel + 1);
    for (const Incidence& inc : t.incident(v)) {
      if (inc.vertex == from) continue;
      compute_smallest(inc.vertex, v);
      best = std::min(best, smallest[inc.vertex]);
    }
    smallest[v] = best;
  }

  std::vector<Incidence> children(VertexId v, VertexId from) const {
    std::vector<Incidence> out;
    for (const Incidence& inc : t.incident(v))
      if (inc.vertex != from) out.push_back(inc);
    std::sort(out.begin(), out.end(),
              [&](const Incidence& a, const Incidence& b) { return smallest[a.vertex] < smallest[b.vertex]; });
    return out;
  }

  void write(std::string& out, VertexId v, VertexId from) const {
    const auto kids = children(v, from);
    if (!kids.empty()) {
      out += '(';
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i != 0) out += ',';
        write(out, kids[i].vertex, v);
        out += ':';
        out += format_rational(t.edge(kids[i].edge).weight);
      }
      out += ')';
    }
    if (const auto l = t.label(v)) out += std::to_string(*l);
  }
};

}  // namespace

WeightedTree parse_tree(std::string_view text) { return NewickParser(text).parse(); }

std::string serialize_tree(const WeightedTree& t) {
  std::optional<VertexId> root;
  for (VertexId v = 0; v < t.vertex_count() && !root; ++v)
    if (!t.label(v)) root = v;
  if (!root) root = t.vertex_of(t.leaves().min());
  constexpr VertexId kNone = static_cast<VertexId>(-1);
  Writer w{t, std::vector<LeafLabel>(t.vertex_count())};
  w.compute_smallest(*root, kNone);
  std::string out;
  w.write(out, *root, kNone);
  out += ";\n";
  return out;
}

}  // namespace pseudostar
