#include <gtest/gtest.h>

#include "squarerun/oracle.hpp"

using namespace squarerun;

TEST(Range, Basics) {
  const Range r{3, 7};
  EXPECT_EQ(r.length(), 5);
  EXPECT_FALSE(r.empty());
  EXPECT_TRUE(r.contains(3));
  EXPECT_TRUE(r.contains(7));
  EXPECT_FALSE(r.contains(8));
  EXPECT_TRUE((Range{5, 4}).empty());
}

TEST(EqString, AnswersFollowTokens) {
  auto s = EqString::from_symbols({5, 7, 5, 9});
  EXPECT_EQ(s.size(), 4);
  EXPECT_TRUE(s.eq(1, 3));
  EXPECT_FALSE(s.eq(1, 2));
  EXPECT_FALSE(s.eq(2, 4));
  EXPECT_TRUE(s.eq(2, 2));
}

TEST(EqString, CountersSplitPositiveAnswers) {
  auto s = EqString::from_symbols({1, 1, 1, 2});
  EXPECT_TRUE(s.eq(1, 2));   // merging
  EXPECT_TRUE(s.eq(2, 3));   // merging
  EXPECT_TRUE(s.eq(1, 3));   // implied by the memo
  EXPECT_TRUE(s.eq(3, 3));   // trivial
  EXPECT_FALSE(s.eq(1, 4));  // negative
  EXPECT_FALSE(s.eq(1, 4));  // negatives are not cached
  const auto& st = s.stats();
  EXPECT_EQ(st.total, 6u);
  EXPECT_EQ(st.positive_merging, 2u);
  EXPECT_EQ(st.positive_repeat, 2u);
  EXPECT_EQ(st.negative, 2u);
  EXPECT_EQ(st.counted(), 4u);
}

TEST(EqString, MergingNeverExceedsNMinusOne) {
  std::vector<Token> t(50, 0);
  auto s = EqString::from_symbols(t);
  for (Index i = 1; i <= 50; ++i) {
    for (Index j = 1; j <= 50; ++j) s.eq(i, j);
  }
  EXPECT_EQ(s.stats().positive_merging, 49u);
  EXPECT_EQ(s.stats().total, 2500u);
}

TEST(EqString, WithoutMemoEveryPositiveIsMerging) {
  auto s = EqString::from_symbols({1, 1, 1}, /*memo=*/false);
  s.eq(1, 2);
  s.eq(2, 3);
  s.eq(1, 3);
  s.eq(1, 3);
  EXPECT_EQ(s.stats().positive_merging, 4u);
  EXPECT_EQ(s.stats().positive_repeat, 0u);
}

TEST(EqString, StatsDifference) {
  auto s = EqString::from_symbols({1, 2, 1});
  s.eq(1, 2);
  const auto before = s.stats();
  s.eq(1, 3);
  s.eq(2, 3);
  const auto d = s.stats() - before;
  EXPECT_EQ(d.total, 2u);
  EXPECT_EQ(d.positive_merging, 1u);
  EXPECT_EQ(d.negative, 1u);
}

TEST(EqString, RejectsBadInput) {
  EXPECT_THROW(EqString::from_symbols(std::span<const Token>{}), InputError);
  auto s = EqString::from_symbols({1, 2});
  EXPECT_THROW(s.eq(0, 1), InputError);
  EXPECT_THROW(s.eq(1, 3), InputError);
  EXPECT_THROW(s.check(Range{1, 3}), InputError);
  EXPECT_NO_THROW(s.check(Range{2, 1}));
  EXPECT_THROW(EqString(nullptr), InputError);
}

TEST(EqString, CustomOracle) {
  struct Parity final : SymbolOracle {
    Index size() const override { return 10; }
    bool same(Index i, Index j) override { return (i - j) % 2 == 0; }
  };
  EqString s(std::make_shared<Parity>());
  EXPECT_TRUE(s.eq(1, 9));
  EXPECT_FALSE(s.eq(1, 2));
  EXPECT_EQ(s.whole(), (Range{1, 10}));
}
