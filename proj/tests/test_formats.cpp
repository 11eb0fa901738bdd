#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pseudostar/dissim_io.hpp"
#include "pseudostar/dissimilarity.hpp"
#include "pseudostar/error.hpp"
#include "pseudostar/newick.hpp"
#include "pseudostar/oracle.hpp"

namespace pseudostar {
namespace {

using fixtures::eight_leaf_left;
using fixtures::eight_leaf_right;

TEST(Rationals, ParseAndFormat) {
  EXPECT_EQ(parse_rational("12"), Rational(12));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("+7/21"), Rational(1, 3));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  for (const char* bad : {"", "-", "1/0", "1.2.3", "a", "1/", "/2", "3e5", "1 "})
    EXPECT_FALSE(parse_rational(bad).has_value()) << bad;
  EXPECT_EQ(format_rational(Rational(6, 4)), "3/2");
  EXPECT_EQ(format_rational(Rational(-8, 4)), "-2");
}

TEST(Newick, ParseExamples) {
  const WeightedTree s = parse_tree("(1:1,2:2,3:3);");
  EXPECT_EQ(s.leaf_count(), 3);
  EXPECT_EQ(s.total_weight(), 6);
  EXPECT_TRUE(labeled_equal(s, fixtures::star({1, 2, 3})));

  const WeightedTree r = eight_leaf_right();
  EXPECT_EQ(r.leaf_count(), 8);
  EXPECT_EQ(r.total_weight(), 66);

  const WeightedTree two = parse_tree("(2:5/2)1;");
  EXPECT_EQ(two.leaf_count(), 2);
  EXPECT_EQ(two.total_weight(), Rational(5, 2));
  EXPECT_TRUE(labeled_equal(parse_tree(" ( 1 : 1 ,\n 2:2 , 3 : 3 ) ;\n"), s));
}

TEST(Newick, ParseErrors) {
  const auto position = [](const char* text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_tree(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    ADD_FAILURE() << "accepted " << text;
    return {0, 0};
  };
  EXPECT_EQ(position("(1:1,2:2"), (std::pair<std::size_t, std::size_t>{1, 9}));
  EXPECT_EQ(position("(1:1,\n2:x,3:1);"), (std::pair<std::size_t, std::size_t>{2, 3}));
  position("(1:1,2:2,3);");
  position("(1:1,2:2,3:3)4;");
  position("((1:1,2:2)5:1,3:3);");
  position("(1:1,2:2,3:3):4;");
  position("(1:1,2:2,3:3);x");
  position("(1:1,2:2,65:3);");
  position("(0:1,2:2,3:3);");
}

TEST(Newick, SerializeIsCanonical) {
  const std::string right = serialize_tree(eight_leaf_right());
  EXPECT_EQ(right, "((1:7,2:8):1,(3:7,4:8):1,(5:7,6:8):3,(7:7,8:7):2);\n");
  EXPECT_EQ(serialize_tree(parse_tree(right)), right);
  EXPECT_EQ(serialize_tree(parse_tree("(2:5/2)1;")), "(2:5/2)1;\n");
  const std::string left = serialize_tree(eight_leaf_left());
  EXPECT_TRUE(labeled_equal(parse_tree(left), eight_leaf_left()));
  EXPECT_EQ(serialize_tree(parse_tree(left)), left);
}

TEST(Newick, RoundTripRandomTrees) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    oracle::RandomTreeSpec spec;
    spec.n = 3 + static_cast<int>(seed % 15);
    spec.seed = seed;
    spec.max_denominator = 6;
    spec.internal = {Rational(-3), Rational(3)};
    spec.subdivisions = static_cast<int>(seed % 2);
    const WeightedTree t = oracle::random_tree(spec);
    const std::string text = serialize_tree(t);
    const WeightedTree back = parse_tree(text);
    EXPECT_TRUE(labeled_equal(back, t)) << text;
    EXPECT_EQ(serialize_tree(back), text);
  }
}

TEST(DissimilarityText, StarDocument) {
  const KDissimilarity d = parse_dissimilarity(
      "# four-leaf star\n"
      "n=4 k=3\n"
      "2 3 4 = 9\n"
      "1 2 3 = 6   # first\n"
      "1 3 4 = 8\n"
      "\n"
      "1 2 4 = 7\n");
  EXPECT_TRUE(vectors_equal(d, k_vector(fixtures::star({1, 2, 3, 4}), 3)));
  EXPECT_EQ(serialize_dissimilarity(d), "n=4 k=3\n1 2 3 = 6\n1 2 4 = 7\n1 3 4 = 8\n2 3 4 = 9\n");
}

TEST(DissimilarityText, Errors) {
  const auto code = [](const char* text) {
    try {
      parse_dissimilarity(text);
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "accepted " << text;
    return ErrorCode::NotATree;
  };
  EXPECT_EQ(code("n=4 k=3\n1 2 3 = 6\n1 2 4 = 7\n1 3 4 = 8\n"), ErrorCode::MissingSubset);
  EXPECT_EQ(code("n=4 k=3\n1 2 3 = 6\n1 2 3 = 6\n1 2 4 = 7\n1 3 4 = 8\n2 3 4 = 9\n"), ErrorCode::DuplicateSubset);
  EXPECT_EQ(code("n=4 k=3\n1 3 2 = 6\n"), ErrorCode::ParseError);
  EXPECT_EQ(code("n=4 k=3\n1 2 5 = 6\n"), ErrorCode::ParseError);
  EXPECT_EQ(code("n=4 k=3\n1 2 = 6\n"), ErrorCode::ParseError);
  EXPECT_EQ(code("n=4 k=3\n1 2 3 = x\n"), ErrorCode::ParseError);
  EXPECT_EQ(code("n=4\n"), ErrorCode::ParseError);
  EXPECT_EQ(code("n=4 k=4\n"), ErrorCode::ParseError);
  EXPECT_EQ(code(""), ErrorCode::ParseError);
  try {
    parse_dissimilarity("n=4 k=3\n1 2 3 = 6\n1 2 4 = 7/0\n");
    ADD_FAILURE();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 9u);
  }
}

TEST(DissimilarityText, EightLeafRoundTripIsByteIdentical) {
  const std::string text = serialize_dissimilarity(k_vector(eight_leaf_right(), 5));
  EXPECT_EQ(text.substr(0, 24), "n=8 k=5\n1 2 3 4 5 = 42\n1");
  EXPECT_EQ(serialize_dissimilarity(parse_dissimilarity(text)), text);
  KDissimilarity half(5, 3);
  for (std::size_t r = 0; r < half.size(); ++r) half.set(half.subset_at(r), Rational(static_cast<long>(r)) / 2);
  const std::string h = serialize_dissimilarity(half);
  EXPECT_NE(h.find("= 1/2\n"), std::string::npos);
  EXPECT_TRUE(vectors_equal(parse_dissimilarity(h), half));
}

}  // namespace
}  // namespace pseudostar
