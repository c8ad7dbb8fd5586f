#include <gtest/gtest.h>

#include "cis2/text.hpp"

namespace cis2 {
namespace {

TEST(Text, NormalizeLowercasesStripsPunctuationAndCollapses) {
  EXPECT_EQ(normalize_for_match("  Fred's   BUS!\t"), "freds bus");
  EXPECT_EQ(normalize_for_match("...,"), "");
  EXPECT_EQ(normalize_for_match("a-b c"), "ab c");
}

TEST(Text, CollapseWhitespace) {
  EXPECT_EQ(collapse_whitespace("  a \n\t b  "), "a b");
  EXPECT_EQ(collapse_whitespace(""), "");
}

TEST(Text, SplitAndJoin) {
  auto parts = split_whitespace(" x  y z ");
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(join(parts, "|"), "x|y|z");
}

TEST(Text, TokenF1Examples) {
  EXPECT_DOUBLE_EQ(token_f1("fred misses his bus", "Fred misses his bus."), 1.0);
  EXPECT_DOUBLE_EQ(token_f1("a b c d", "a b x y"), 0.5);
  EXPECT_DOUBLE_EQ(token_f1("a b", "c d"), 0.0);
  EXPECT_DOUBLE_EQ(token_f1("", "!!"), 1.0);
  EXPECT_DOUBLE_EQ(token_f1("", "a"), 0.0);
}

TEST(Text, TokenF1CountsMultisets) {
  // overlap is min(2,1) = 1 for "a"
  EXPECT_DOUBLE_EQ(token_f1("a a", "a b"), 0.5);
}

TEST(Text, TokenF1SymmetricAndCaseInvariant) {
  const char* pairs[][2] = {{"He just missed his bus.", "Fred misses his bus"},
                            {"the the cat", "The cat, the dog"},
                            {"x y z", "Z; Y"}};
  for (auto& p : pairs) {
    EXPECT_EQ(token_f1(p[0], p[1]), token_f1(p[1], p[0]));
    std::string upper = p[0];
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    EXPECT_EQ(token_f1(upper + "!", p[1]), token_f1(p[0], p[1]));
  }
}

}  // namespace
}  // namespace cis2
