#include "pseudostar/dissim_io.hpp"

#include <charconv>
#include <optional>
#include <vector>

#include "pseudostar/error.hpp"
#include "pseudostar/subsets.hpp"

namespace pseudostar {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_words(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<int> header_field(const Token& t, std::string_view key) {
  if (t.text.size() <= key.size() + 1 || t.text.substr(0, key.size()) != key || t.text[key.size()] != '=')
    return std::nullopt;
  return to_int(t.text.substr(key.size() + 1));
}

}  // namespace

KDissimilarity parse_dissimilarity(std::string_view text) {
  std::optional<KDissimilarity> d;
  std::vector<bool> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::vector<Token> words = split_words(line);
    if (words.empty()) continue;

    if (!d) {
      if (words.size() != 2) throw ParseError("expected header 'n=<int> k=<int>'", line_no, words.front().column);
      const auto n = header_field(words[0], "n");
      const auto k = header_field(words[1], "k");
      if (!n) throw ParseError("expected 'n=<int>'", line_no, words[0].column);
      if (!k) throw ParseError("expected 'k=<int>'", line_no, words[1].column);
      try {
        d.emplace(*n, *k);
      } catch (const Error& err) {
        throw ParseError(err.what(), line_no, words[0].column);
      }
      seen.assign(d->size(), false);
      continue;
    }

    const int k = d->k();
    if (words.size() != static_cast<std::size_t>(k) + 2 || words[k].text != "=")
      throw ParseError("expected " + std::to_string(k) + " leaves, '=' and a value", line_no, words.front().column);
    LeafSet subset;
    int previous = 0;
    for (int i = 0; i < k; ++i) {
      const auto leaf = to_int(words[i].text);
      if (!leaf || *leaf < 1 || *leaf > d->n())
        throw ParseError("leaf must be an integer in 1.." + std::to_string(d->n()), line_no, words[i].column);
      if (*leaf <= previous) throw ParseError("leaves must be strictly increasing", line_no, words[i].column);
      previous = *leaf;
      subset.insert(*leaf);
    }
    const auto value = parse_rational(words[k + 1].text);
    if (!value) throw ParseError("malformed value", line_no, words[k + 1].column);
    const std::size_t rank = colex_rank(subset);
    if (seen[rank])
      throw Error(ErrorCode::DuplicateSubset, "subset " + subset.to_string() + " listed twice (line " +
                                                  std::to_string(line_no) + ")");
    seen[rank] = true;
    d->set(subset, *value);
  }
  if (!d) throw ParseError("missing header", line_no, 1);
  for (std::size_t r = 0; r < seen.size(); ++r)
    if (!seen[r]) throw Error(ErrorCode::MissingSubset, "no record for subset " + d->subset_at(r).to_string());
  return std::move(*d);
}

std::string serialize_dissimilarity(const KDissimilarity& d) {
  std::string out = "n=" + std::to_string(d.n()) + " k=" + std::to_string(d.k()) + "\n";
  for (std::size_t r = 0; r < d.size(); ++r) {
    d.subset_at(r).for_each([&](LeafLabel l) {
      out += std::to_string(l);
      out += ' ';
    });
    out += "= ";
    out += format_rational(d.at_rank(r));
    out += '\n';
  }
  return out;
}

}  // namespace pseudostar
