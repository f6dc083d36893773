#include <gtest/gtest.h>

#include <set>

#include "squarerun/diffcover.hpp"

using namespace squarerun;

TEST(Cover, MembershipRule) {
  const Cover c(40, 9);  // r = 3
  EXPECT_EQ(c.r(), 3);
  std::set<Index> expect;
  for (Index i = 1; i <= 40; ++i) {
    if (i % 3 == 0 || i % 9 < 3) expect.insert(i);
  }
  EXPECT_EQ(std::set<Index>(c.members().begin(), c.members().end()), expect);
  EXPECT_TRUE(std::is_sorted(c.members().begin(), c.members().end()));
  for (Index i = 1; i <= 40; ++i) EXPECT_EQ(c.contains(i), expect.count(i) == 1) << i;
}

TEST(Cover, OffsetLandsBothInCover) {
  for (Index t : {4, 5, 9, 10, 16, 30, 64}) {
    for (Index n : {t, t + 1, 2 * t + 3, Index{150}}) {
      if (n < t) continue;
      const Cover c(n, t);
      for (Index i = 1; i <= n - t + 1; ++i) {
        for (Index j = 1; j <= n - t + 1; ++j) {
          const Index h = c.h(i, j);
          ASSERT_GE(h, 0);
          ASSERT_LT(h, t);
          ASSERT_TRUE(c.contains(i + h)) << n << ' ' << t << ' ' << i << ' ' << j;
          ASSERT_TRUE(c.contains(j + h)) << n << ' ' << t << ' ' << i << ' ' << j;
        }
      }
    }
  }
}

TEST(Cover, SizeBound) {
  for (Index t : {4, 16, 100, 1024}) {
    for (Index n : {1024, 5000, 100000}) {
      if (t > n) continue;
      const Cover c(n, t);
      EXPECT_LE(c.size(), c.size_bound() + c.r());
      // O(n / sqrt(t)) with a small constant.
      EXPECT_LE(c.size(), 2 * n / c.r() + c.r());
    }
  }
}

TEST(Cover, Errors) {
  EXPECT_THROW(Cover(10, 3), ParameterError);
  EXPECT_THROW(Cover(10, 11), ParameterError);
  const Cover c(10, 4);
  EXPECT_THROW(static_cast<void>(c.h(8, 1)), InputError);
  EXPECT_NO_THROW(static_cast<void>(c.h(7, 7)));
  EXPECT_EQ(build_cover(10, 4).members(), c.members());
}
