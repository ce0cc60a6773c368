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

#include <algorithm>
#include <set>
#include <vector>

#include "test_support.hpp"

namespace dsclass {
namespace {

using testing::even_rho;
using testing::make_cusp;
using testing::odd_rho;

constexpr Sign P = Sign::kPlus;
constexpr Sign M = Sign::kMinus;

bool has_clause(const std::vector<Violation>& v, const std::string& clause) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.clause == clause; });
}

TEST(ValidateTest, EmptyTripleIsValid) {
  EXPECT_TRUE(validate_triple(JordanTriple(make_cusp())).empty());
}

TEST(ValidateTest, ParityViolation) {
  JordanTriple t(make_cusp());
  t.add_with_singles(odd_rho(), {4}, {P});
  EXPECT_TRUE(has_clause(validate_triple(t), "parity"));
}

TEST(ValidateTest, CompatibilityViolation) {
  auto rho = even_rho();
  JordanTriple t(make_cusp());
  t.add_with_singles(rho, {2, 4}, {P, P});
  t.eps_pair[{{rho, 2}, {rho, 4}}] = M;
  auto v = validate_triple(t);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].clause, "compatibility");
}

TEST(ValidateTest, DomainViolations) {
  auto rho = odd_rho();
  JordanTriple t(make_cusp({{"rho", {1}}}));
  t.add_with_pairs(rho, {1, 3, 5}, {P, M});
  EXPECT_TRUE(validate_triple(t).empty());
  t.eps_single[{rho, 3}] = P;
  EXPECT_TRUE(has_clause(validate_triple(t), "single-domain"));
  t.eps_single.clear();
  t.eps_pair[{{rho, 1}, {rho, 5}}] = P;
  EXPECT_TRUE(has_clause(validate_triple(t), "pair-domain"));
  t.eps_pair.erase({{rho, 1}, {rho, 5}});
  t.eps_pair.erase({{rho, 3}, {rho, 5}});
  EXPECT_TRUE(has_clause(validate_triple(t), "pair-domain"));
  EXPECT_THROW(require_valid(t), DomainError);
}

TEST(ReduceTest, EvenPairToEmpty) {
  auto rho = even_rho();
  JordanTriple t(make_cusp());
  t.add_with_singles(rho, {2, 4}, {P, P});
  auto r = subordinate_reductions(t);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].lower, 2);
  EXPECT_EQ(r[0].upper, 4);
  EXPECT_TRUE(r[0].reduced.jord.empty());
  EXPECT_TRUE(r[0].reduced.eps_single.empty());
}

TEST(ReduceTest, BridgePairIsTheProduct) {
  auto rho = odd_rho();
  JordanTriple t(make_cusp({{"rho", {1, 3}}}));
  t.add_with_pairs(rho, {1, 3, 5, 7}, {M, P, M});
  auto r = subordinate_reductions(t);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].lower, 3);
  EXPECT_EQ(r[0].upper, 5);
  EXPECT_EQ(r[0].reduced.block("rho"), (std::vector<int>{1, 7}));
  EXPECT_EQ(r[0].reduced.pair(rho, 1, 7), P);
}

TEST(ReduceTest, AllMinusHasNoReductions) {
  JordanTriple t(make_cusp({{"rho", {1}}}));
  t.add_with_pairs(odd_rho(), {1, 3, 5}, {M, M});
  EXPECT_TRUE(subordinate_reductions(t).empty());
}

TEST(ReduceTest, SinglesSurviveWhenTheMinimumIsRemoved) {
  auto rho = even_rho();
  JordanTriple t(make_cusp());
  t.add_with_singles(rho, {2, 4, 6}, {M, M, P});
  auto r = subordinate_reductions(t);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].reduced.single(rho, 6), P);
  EXPECT_TRUE(validate_triple(r[0].reduced).empty());
}

TEST(AlternatedTest, Examples) {
  EXPECT_TRUE(is_alternated(JordanTriple(make_cusp())));

  JordanTriple three(make_cusp({{"rho", {1}}}));
  three.add_with_pairs(odd_rho(), {3}, {});
  auto w = is_alternated(three);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->phi.at("rho"), (std::vector<std::pair<int, int>>{{3, 1}}));

  JordanTriple minus(make_cusp());
  minus.add_with_singles(even_rho(), {2, 4}, {M, M});
  EXPECT_EQ(minus.pair(even_rho(), 2, 4), P);
  EXPECT_FALSE(is_alternated(minus));
}

TEST(AlternatedTest, ZeroJoinsTheTargetForPositiveEvenMinimum) {
  JordanTriple plus(make_cusp());
  plus.add_with_singles(even_rho(), {2}, {P});
  ASSERT_TRUE(is_alternated(plus));
  EXPECT_EQ(is_alternated(plus)->phi.at("rho"), (std::vector<std::pair<int, int>>{{2, 0}}));
  JordanTriple minus(make_cusp());
  minus.add_with_singles(even_rho(), {2}, {M});
  EXPECT_FALSE(is_alternated(minus));
}

TEST(AlternatedTest, EmptyTripleNeedsEmptyCuspBlocks) {
  EXPECT_FALSE(is_alternated(JordanTriple(make_cusp({{"rho", {1}}}))));
}

TEST(AdmissibleTest, Examples) {
  auto rho = odd_rho();
  JordanTriple plus(make_cusp());
  plus.add_with_singles(rho, {1, 3}, {P, P});
  auto chain = is_admissible(plus);
  ASSERT_TRUE(chain);
  EXPECT_EQ(chain->steps.size(), 1u);
  EXPECT_TRUE(chain->base.jord.empty());

  JordanTriple mixed(make_cusp());
  mixed.add_with_singles(rho, {1, 3}, {P, M});
  EXPECT_FALSE(is_admissible(mixed));

  EXPECT_TRUE(is_admissible(JordanTriple(make_cusp()))->steps.empty());
}

TEST(AdmissibleTest, AgreesWithUnmemoizedSearch) {
  for (auto cusp : {make_cusp(), make_cusp({{"rho", {1}}}), make_cusp({{"rho", {1, 3}}})}) {
    for (auto rho : {odd_rho()}) {
      for (const auto& values : testing::subsets(testing::parity_range(rho.parity, 9), 5)) {
        for (const auto& t : testing::brute_force_triples(cusp, {{rho, values}})) {
          EXPECT_EQ(is_admissible(t).has_value(), testing::brute_admissible(t)) << label(t);
        }
      }
    }
  }
}

TEST(DominatesTest, Examples) {
  auto rho = even_rho();
  JordanTriple t(make_cusp());
  t.add_with_singles(rho, {2, 4}, {P, P});
  JordanTriple empty(make_cusp());
  EXPECT_EQ(dominates(t, t)->size(), 1u);
  auto path = dominates(t, empty);
  ASSERT_TRUE(path);
  EXPECT_EQ(path->size(), 2u);
  EXPECT_FALSE(dominates(empty, t));
  EXPECT_THROW(dominates(t, JordanTriple(make_cusp({}, "other"))), DomainError);
}

TEST(ExtensionsTest, EvenPairOverEmpty) {
  auto rho = even_rho();
  auto ext = dominating_extensions(JordanTriple(make_cusp()), 2, 4, rho);
  ASSERT_EQ(ext.size(), 2u);
  JordanTriple pp(make_cusp()), mm(make_cusp());
  pp.add_with_singles(rho, {2, 4}, {P, P});
  mm.add_with_singles(rho, {2, 4}, {M, M});
  EXPECT_EQ(ext[0], pp);
  EXPECT_EQ(ext[1], mm);
}

TEST(ExtensionsTest, InsertBetweenKeepsTheBridgeProduct) {
  auto rho = odd_rho();
  auto cusp = make_cusp({{"rho", {1, 3}}});
  JordanTriple t(cusp);
  t.add_with_pairs(rho, {1, 7}, {M});
  ASSERT_TRUE(is_alternated(t));
  auto ext = dominating_extensions(t, 3, 5, rho);
  ASSERT_EQ(ext.size(), 2u);
  std::set<Sign> left;
  for (const auto& e : ext) {
    left.insert(*e.pair(rho, 1, 3));
    EXPECT_EQ(*e.pair(rho, 1, 3) * *e.pair(rho, 5, 7), M);
    EXPECT_EQ(e.pair(rho, 3, 5), P);
    EXPECT_TRUE(is_admissible(e));
    EXPECT_EQ(reduce_pair(e, rho, 3, 5), t);
  }
  EXPECT_EQ(left.size(), 2u);
}

TEST(ExtensionsTest, GapViolation) {
  auto rho = even_rho();
  JordanTriple t(make_cusp());
  t.add_with_singles(rho, {4}, {P});
  EXPECT_THROW(dominating_extensions(t, 2, 6, rho), DomainError);
  EXPECT_THROW(dominating_extensions(t, 6, 2, rho), DomainError);
  EXPECT_THROW(dominating_extensions(t, 1, 3, rho), DomainError);
}

TEST(ExtensionsTest, RequiresAdmissibleBase) {
  auto rho = even_rho();
  JordanTriple t(make_cusp());
  t.add_with_singles(rho, {2}, {M});
  EXPECT_THROW(dominating_extensions(t, 4, 6, rho), DomainError);
}

TEST(ExtensionsTest, MatchBruteForce) {
  for (auto rho : {even_rho(), odd_rho()}) {
    for (auto cusp : {make_cusp(), make_cusp({{"rho", {rho.parity == Parity::kEven ? 2 : 1}}})}) {
      for (const auto& values : testing::subsets(testing::parity_range(rho.parity, 7), 3)) {
        for (const auto& t : testing::brute_force_triples(cusp, {{rho, values}})) {
          if (!is_admissible(t)) continue;
          for (auto [a, b] : testing::gap_insertions(t, rho, 9)) {
            auto ext = dominating_extensions(t, a, b, rho);
            auto grown = values;
            grown.push_back(a);
            grown.push_back(b);
            std::sort(grown.begin(), grown.end());
            std::set<JordanTriple> expected;
            for (const auto& e : testing::brute_force_triples(cusp, {{rho, grown}})) {
              if (e.pair(rho, a, b) == P && reduce_pair(e, rho, a, b) == t && is_admissible(e)) {
                expected.insert(e);
              }
            }
            EXPECT_EQ(std::set<JordanTriple>(ext.begin(), ext.end()), expected) << label(t);
            EXPECT_EQ(expected.size(), 2u);
          }
        }
      }
    }
  }
}

TEST(LabelTest, Formats) {
  JordanTriple t(make_cusp());
  t.add_with_singles(even_rho(), {2, 4}, {P, P});
  EXPECT_EQ(label(t), "rho{2+,4+}");
  JordanTriple u(make_cusp({{"rho", {1}}}));
  u.add_with_pairs(odd_rho(), {1, 3, 5}, {M, P});
  EXPECT_EQ(label(u), "rho{1 - 3 + 5}");
  EXPECT_EQ(label(JordanTriple(make_cusp())), "{}");
}

}  // namespace
}  // namespace dsclass
