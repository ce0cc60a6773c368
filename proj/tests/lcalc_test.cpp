// Copyright 2026 The dsclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <vector>

#include "test_support.hpp"

namespace dsclass {
namespace {

using testing::even_rho;
using testing::odd_rho;

EmbeddingDatum datum(HalfInt x, HalfInt y, std::set<int> base) {
  auto rho = (x + x).as_integer() % 2 == 0 ? odd_rho() : even_rho();
  return {rho, x, y, std::move(base)};
}

TEST(LRatioTest, OrderAtZero) {
  EXPECT_EQ((LRatio{HalfInt(0), HalfInt(1)}.order_at_zero()), 1);
  EXPECT_EQ((LRatio{HalfInt(1), HalfInt(0)}.order_at_zero()), -1);
  EXPECT_EQ((LRatio{half(1), HalfInt(2)}.order_at_zero()), 0);
  EXPECT_EQ((LRatio{HalfInt(0), HalfInt(0)}.order_at_zero()), 0);
}

TEST(PlancherelTest, PoleFromTopExponent) {
  EXPECT_EQ(plancherel_order(5, datum(HalfInt(2), HalfInt(1), {1}), 0), 2);
}

TEST(PlancherelTest, ZeroCancelsBasePole) {
  EXPECT_EQ(plancherel_order(1, datum(HalfInt(2), HalfInt(1), {1}), 2), 0);
}

TEST(PlancherelTest, PoleFromBottomExponent) {
  EXPECT_EQ(plancherel_order(3, datum(HalfInt(2), HalfInt(-1), {}), 0), 2);
}

TEST(PlancherelTest, Preconditions) {
  auto d = datum(HalfInt(2), HalfInt(1), {1});
  EXPECT_THROW(plancherel_order(4, d, 0), DomainError);
  EXPECT_THROW(plancherel_order(1, d, 0), DomainError);
  EXPECT_THROW(plancherel_order(3, d, 2), DomainError);
  EXPECT_THROW(plancherel_order(3, d, 1), DomainError);
  EXPECT_THROW(plancherel_order(3, EmbeddingDatum{odd_rho(), HalfInt(1), HalfInt(2), {}}, 0),
               DomainError);
  EXPECT_THROW(plancherel_order(3, EmbeddingDatum{odd_rho(), half(1), half(-1), {}}, 0),
               DomainError);
}

TEST(JordUpdateTest, PositiveY) {
  EXPECT_EQ(jord_update(datum(HalfInt(2), HalfInt(1), {1, 7})), (std::set<int>{5, 7}));
}

TEST(JordUpdateTest, NegativeY) {
  EXPECT_EQ(jord_update(datum(HalfInt(2), HalfInt(-1), {7})), (std::set<int>{3, 5, 7}));
}

TEST(JordUpdateTest, ZeroYTakesTheNonpositiveBranch) {
  EXPECT_EQ(jord_update(datum(HalfInt(0), HalfInt(0), {})), (std::set<int>{1}));
  EXPECT_EQ(jord_update(datum(HalfInt(1), HalfInt(0), {})), (std::set<int>{1, 3}));
}

TEST(JordUpdateTest, MissingRemovedBlock) {
  EXPECT_THROW(jord_update(datum(HalfInt(2), HalfInt(1), {7})), DomainError);
}

TEST(JordUpdateTest, HalfIntegralExponents) {
  EXPECT_EQ(jord_update(datum(half(5), half(3), {2})), (std::set<int>{6}));
  // 2y - 1 = 0 is never a Jordan block.
  EXPECT_THROW(jord_update(datum(half(3), half(1), {2})), DomainError);
  EXPECT_EQ(jord_update(datum(half(3), half(-1), {})), (std::set<int>{2, 4}));
}

// Direct restatement of the pole/zero rule for one z, independent of LRatio:
// poles at x = (z-1)/2 and y = -(z-1)/2, zeros at y = (z-1)/2 + 1 and
// x = -(z-1)/2 - 1, each counted twice.
int order_by_cases(int z, const EmbeddingDatum& d, int base) {
  HalfInt h = half(z - 1);
  int order = base;
  if (d.x == h) order += 2;
  if (d.y == -h) order += 2;
  if (d.y == h + HalfInt(1)) order -= 2;
  if (d.x == -h - HalfInt(1)) order -= 2;
  return order;
}

TEST(PlancherelTest, RatiosMatchCaseRule) {
  for (int tx = -10; tx <= 10; ++tx) {
    for (int ty = -10; ty <= tx; ty += 1) {
      if ((tx - ty) % 2 != 0) continue;
      auto d = datum(half(tx), half(ty), {});
      for (int z = 1; z <= 13; ++z) {
        if (!parity_matches(d.rho.parity, z)) continue;
        for (int base : {0, 2}) {
          EXPECT_EQ(plancherel_raw_order(z, d, base), order_by_cases(z, d, base));
        }
      }
    }
  }
}

}  // namespace
}  // namespace dsclass
