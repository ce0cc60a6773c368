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

#pragma once

#include <algorithm>
#include <climits>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dsclass/errors.hpp"
#include "dsclass/segment.hpp"

namespace dsclass {

enum class Sign : signed char { kMinus = -1, kPlus = 1 };

constexpr Sign operator*(Sign x, Sign y) {
  return static_cast<int>(x) * static_cast<int>(y) > 0 ? Sign::kPlus : Sign::kMinus;
}
constexpr Sign operator-(Sign x) { return x == Sign::kPlus ? Sign::kMinus : Sign::kPlus; }
constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr char sign_char(Sign s) { return s == Sign::kPlus ? '+' : '-'; }

inline Sign sign_from_int(int v) {
  if (v == 1) return Sign::kPlus;
  if (v == -1) return Sign::kMinus;
  throw DomainError("sign must be +1 or -1, got " + std::to_string(v));
}

// The partial cuspidal support sigma_cusp. jord maps a symbol id to
// Jord_rho(sigma_cusp); a symbol that is absent has an empty block. For an
// odd-type rho, rho >| sigma_cusp reduces exactly when that block is empty.
struct CuspidalSupport {
  std::string id;
  std::int64_t degree = 0;
  std::map<std::string, std::set<int>> jord;

  const std::set<int>& jord_of(const std::string& rho_id) const {
    static const std::set<int> kEmpty;
    auto it = jord.find(rho_id);
    return it == jord.end() ? kEmpty : it->second;
  }

  // Whether epsilon is defined on single elements (a, rho).
  bool singles_defined(const CuspidalSymbol& rho) const {
    return rho.parity == Parity::kEven || jord_of(rho.id).empty();
  }
};

using CuspPtr = std::shared_ptr<const CuspidalSupport>;

struct JordElement {
  CuspidalSymbol rho;
  int a = 0;

  friend bool operator==(const JordElement& x, const JordElement& y) {
    return x.rho == y.rho && x.a == y.a;
  }
  friend std::strong_ordering operator<=>(const JordElement& x, const JordElement& y) {
    if (auto c = x.rho <=> y.rho; c != 0) return c;
    return x.a <=> y.a;
  }
};

// (a_, a): the lower element first.
using JordPair = std::pair<JordElement, JordElement>;

// (Jord, sigma_cusp, epsilon). epsilon is stored twice over: on the single
// elements where it is defined and on adjacent pairs. Where both are defined,
// eps(a_) * eps(a) = eps((a_, a)). Nothing here enforces the invariants;
// validate_triple reports every violation.
struct JordanTriple {
  CuspPtr cusp;
  std::set<JordElement> jord;
  std::map<JordElement, Sign> eps_single;
  std::map<JordPair, Sign> eps_pair;

  JordanTriple() = default;
  explicit JordanTriple(CuspPtr c) : cusp(std::move(c)) {}

  // Distinct symbols occurring in jord, ascending by id.
  std::vector<CuspidalSymbol> symbols() const {
    std::vector<CuspidalSymbol> out;
    for (const auto& e : jord) {
      if (out.empty() || !(out.back() == e.rho)) out.push_back(e.rho);
    }
    return out;
  }

  // Jord_rho, ascending.
  std::vector<int> block(const std::string& rho_id) const {
    std::vector<int> out;
    auto it = jord.lower_bound(JordElement{CuspidalSymbol{rho_id}, INT_MIN});
    for (; it != jord.end() && it->rho.id == rho_id; ++it) out.push_back(it->a);
    return out;
  }

  std::optional<Sign> single(const CuspidalSymbol& rho, int a) const {
    auto it = eps_single.find({rho, a});
    if (it == eps_single.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Sign> pair(const CuspidalSymbol& rho, int lower, int upper) const {
    auto it = eps_pair.find({{rho, lower}, {rho, upper}});
    if (it == eps_pair.end()) return std::nullopt;
    return it->second;
  }

  // Adds Jord_rho = values with epsilon given on singles; pair values are the
  // products of neighbouring singles.
  JordanTriple& add_with_singles(const CuspidalSymbol& rho, std::vector<int> values,
                                 const std::vector<Sign>& singles) {
    if (values.size() != singles.size()) throw DomainError("one sign per element required");
    std::vector<std::pair<int, Sign>> sorted;
    for (std::size_t i = 0; i < values.size(); ++i) sorted.emplace_back(values[i], singles[i]);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      jord.insert({rho, sorted[i].first});
      eps_single[{rho, sorted[i].first}] = sorted[i].second;
      if (i > 0) {
        eps_pair[{{rho, sorted[i - 1].first}, {rho, sorted[i].first}}] =
            sorted[i - 1].second * sorted[i].second;
      }
    }
    return *this;
  }

  // Adds Jord_rho = values (ascending) with epsilon on adjacent pairs only.
  JordanTriple& add_with_pairs(const CuspidalSymbol& rho, std::vector<int> values,
                               const std::vector<Sign>& pairs) {
    std::sort(values.begin(), values.end());
    if (!values.empty() && pairs.size() + 1 != values.size()) {
      throw DomainError("one sign per adjacent pair required");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      jord.insert({rho, values[i]});
      if (i > 0) eps_pair[{{rho, values[i - 1]}, {rho, values[i]}}] = pairs[i - 1];
    }
    return *this;
  }

  friend bool operator==(const JordanTriple& x, const JordanTriple& y) {
    return x.cusp_id() == y.cusp_id() && x.jord == y.jord && x.eps_single == y.eps_single &&
           x.eps_pair == y.eps_pair;
  }
  // Canonical listing order: cusp, then fewer elements first, then lexicographic.
  friend bool operator<(const JordanTriple& x, const JordanTriple& y) {
    if (x.cusp_id() != y.cusp_id()) return x.cusp_id() < y.cusp_id();
    if (x.jord.size() != y.jord.size()) return x.jord.size() < y.jord.size();
    return std::tie(x.jord, x.eps_single, x.eps_pair) < std::tie(y.jord, y.eps_single, y.eps_pair);
  }

  const std::string& cusp_id() const {
    static const std::string kNone;
    return cusp ? cusp->id : kNone;
  }
};

// Compact human-readable form, e.g. "rho{2+,4+} tau{1 - 3 + 5}" or "{}".
// Blocks with singles list each element's sign; other blocks show the pair
// sign between neighbours.
inline std::string label(const JordanTriple& t) {
  std::string out;
  for (const auto& rho : t.symbols()) {
    if (!out.empty()) out += ' ';
    out += rho.id + '{';
    auto values = t.block(rho.id);
    bool singles = t.single(rho, values.front()).has_value();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (singles) {
        if (i) out += ',';
        out += std::to_string(values[i]);
        auto s = t.single(rho, values[i]);
        out += s ? sign_char(*s) : '?';
      } else {
        if (i) {
          auto p = t.pair(rho, values[i - 1], values[i]);
          out += ' ';
          out += p ? sign_char(*p) : '?';
          out += ' ';
        }
        out += std::to_string(values[i]);
      }
    }
    out += '}';
  }
  return out.empty() ? "{}" : out;
}

struct Violation {
  std::string clause;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Every violated clause of the Jordan-triple definition; empty iff valid.
inline std::vector<Violation> validate_triple(const JordanTriple& t) {
  std::vector<Violation> out;
  auto elem = [](const JordElement& e) { return "(" + std::to_string(e.a) + "," + e.rho.id + ")"; };
  if (!t.cusp) {
    out.push_back({"cusp", "no cuspidal support"});
    return out;
  }

  std::map<std::string, CuspidalSymbol> seen;
  for (const auto& e : t.jord) {
    auto [it, fresh] = seen.emplace(e.rho.id, e.rho);
    if (!fresh && (it->second.parity != e.rho.parity || it->second.rank != e.rho.rank)) {
      out.push_back({"symbol", "inconsistent declarations of " + e.rho.id});
    }
    if (e.a <= 0 || !parity_matches(e.rho.parity, e.a)) {
      out.push_back({"parity", elem(e) + " does not match the " +
                                   std::string(to_string(e.rho.parity)) + " type of " + e.rho.id});
    }
  }

  // Adjacent pairs, keyed lower -> upper.
  std::set<JordPair> adjacent;
  for (const auto& rho : t.symbols()) {
    auto values = t.block(rho.id);
    for (std::size_t i = 1; i < values.size(); ++i) {
      adjacent.insert({{rho, values[i - 1]}, {rho, values[i]}});
    }
  }
  for (const auto& p : adjacent) {
    if (!t.eps_pair.count(p)) {
      out.push_back({"pair-domain", "epsilon missing on " + elem(p.first) + "," + elem(p.second)});
    }
  }
  for (const auto& [p, s] : t.eps_pair) {
    if (!adjacent.count(p)) {
      out.push_back({"pair-domain", "epsilon defined on non-adjacent " + elem(p.first) + "," +
                                        elem(p.second)});
    }
  }

  for (const auto& e : t.jord) {
    bool defined = t.cusp->singles_defined(e.rho);
    bool present = t.eps_single.count(e) != 0;
    if (defined && !present) out.push_back({"single-domain", "epsilon missing on " + elem(e)});
    if (!defined && present) out.push_back({"single-domain", "epsilon not defined on " + elem(e)});
  }
  for (const auto& [e, s] : t.eps_single) {
    if (!t.jord.count(e)) out.push_back({"single-domain", elem(e) + " is not in Jord"});
  }

  for (const auto& [p, s] : t.eps_pair) {
    auto lo = t.eps_single.find(p.first);
    auto hi = t.eps_single.find(p.second);
    if (lo != t.eps_single.end() && hi != t.eps_single.end() && lo->second * hi->second != s) {
      out.push_back({"compatibility", "eps" + elem(p.first) + " * eps" + elem(p.second) +
                                          " != eps of the pair"});
    }
  }
  return out;
}

inline void require_valid(const JordanTriple& t) {
  auto v = validate_triple(t);
  if (!v.empty()) throw DomainError("invalid triple: " + v.front().clause + ": " + v.front().detail);
}

// Removes the adjacent pair (lower, upper) of Jord_rho and rewires epsilon:
// pairs away from the removed ones are kept, the pair bridging the gap gets
// eps((c, lower)) * eps((upper, b)), and singles that stay defined keep their
// values. The pair must be adjacent; its sign is not checked here.
inline JordanTriple reduce_pair(const JordanTriple& t, const CuspidalSymbol& rho, int lower,
                                int upper) {
  JordanTriple r(t.cusp);
  const JordElement lo{rho, lower}, hi{rho, upper};
  for (const auto& e : t.jord) {
    if (!(e == lo) && !(e == hi)) r.jord.insert(e);
  }
  for (const auto& e : r.jord) {
    if (!t.cusp->singles_defined(e.rho)) continue;
    if (auto s = t.eps_single.find(e); s != t.eps_single.end()) r.eps_single.emplace(e, s->second);
  }
  for (const auto& [p, s] : t.eps_pair) {
    if (r.jord.count(p.first) && r.jord.count(p.second)) r.eps_pair.emplace(p, s);
  }
  auto values = t.block(rho.id);
  auto at = std::find(values.begin(), values.end(), lower) - values.begin();
  if (at > 0 && at + 2 < static_cast<long>(values.size())) {
    int c = values[at - 1], b = values[at + 2];
    auto left = t.pair(rho, c, lower);
    auto right = t.pair(rho, upper, b);
    if (left && right) r.eps_pair[{{rho, c}, {rho, b}}] = *left * *right;
  }
  return r;
}

struct Reduction {
  CuspidalSymbol rho;
  int lower = 0;
  int upper = 0;
  JordanTriple reduced;
};

// All triples subordinated to t, one per adjacent pair with epsilon = +1,
// ordered by (rho id, lower).
inline std::vector<Reduction> subordinate_reductions(const JordanTriple& t) {
  require_valid(t);
  std::vector<Reduction> out;
  for (const auto& [p, s] : t.eps_pair) {
    if (s != Sign::kPlus) continue;
    out.push_back({p.first.rho, p.first.a, p.second.a,
                   reduce_pair(t, p.first.rho, p.first.a, p.second.a)});
  }
  return out;
}

// phi_rho : Jord_rho -> Jord'_rho(sigma_cusp), increasing; listed as (a, phi(a)).
struct AlternatedWitness {
  std::map<std::string, std::vector<std::pair<int, int>>> phi;
};

// Jord'_rho(sigma_cusp): the cuspidal block, with 0 added when min Jord_rho is
// even and carries epsilon +1.
inline std::vector<int> alternated_target(const JordanTriple& t, const std::string& rho_id) {
  const auto& cusp_block = t.cusp->jord_of(rho_id);
  std::vector<int> target(cusp_block.begin(), cusp_block.end());
  auto values = t.block(rho_id);
  if (!values.empty() && values.front() % 2 == 0) {
    auto s = t.single(CuspidalSymbol{rho_id}, values.front());
    if (s == Sign::kPlus) target.insert(target.begin(), 0);
  }
  return target;
}

inline std::optional<AlternatedWitness> alternated_unchecked(const JordanTriple& t) {
  for (const auto& [p, s] : t.eps_pair) {
    if (s != Sign::kMinus) return std::nullopt;
  }
  std::set<std::string> ids;
  for (const auto& e : t.jord) ids.insert(e.rho.id);
  for (const auto& [id, block] : t.cusp->jord) {
    if (!block.empty()) ids.insert(id);
  }
  AlternatedWitness w;
  for (const auto& id : ids) {
    auto values = t.block(id);
    auto target = alternated_target(t, id);
    if (values.size() != target.size()) return std::nullopt;
    auto& phi = w.phi[id];
    for (std::size_t i = 0; i < values.size(); ++i) phi.emplace_back(values[i], target[i]);
  }
  return w;
}

// A witness iff every adjacent pair has epsilon -1 and each Jord_rho matches
// Jord'_rho(sigma_cusp) by an increasing bijection.
inline std::optional<AlternatedWitness> is_alternated(const JordanTriple& t) {
  require_valid(t);
  return alternated_unchecked(t);
}

// The bit distinguishing the two triples that extend a smaller one by the
// adjacent pair (lower, upper) of Jord_rho: eps(lower) when singles are
// defined, else the pair linking lower to its lower neighbour, else the pair
// linking upper to its upper neighbour.
inline Sign linking_sign(const JordanTriple& t, const CuspidalSymbol& rho, int lower, int upper) {
  if (auto s = t.single(rho, lower)) return *s;
  auto values = t.block(rho.id);
  auto at = std::find(values.begin(), values.end(), lower) - values.begin();
  if (at > 0) {
    if (auto p = t.pair(rho, values[at - 1], lower)) return *p;
  }
  if (at + 2 < static_cast<long>(values.size())) {
    if (auto p = t.pair(rho, upper, values[at + 2])) return *p;
  }
  throw DomainError("pair (" + std::to_string(lower) + "," + std::to_string(upper) + ") of " +
                    rho.id + " has no linking sign");
}

struct ChainStep {
  CuspidalSymbol rho;
  int lower = 0;
  int upper = 0;
  Sign sign = Sign::kPlus;

  friend bool operator==(const ChainStep& x, const ChainStep& y) {
    return x.rho == y.rho && x.lower == y.lower && x.upper == y.upper && x.sign == y.sign;
  }
};

// An alternated triple and the pairs inserted on top of it, base first.
struct ReductionChain {
  JordanTriple base;
  std::vector<ChainStep> steps;

  friend bool operator==(const ReductionChain&, const ReductionChain&) = default;
};

namespace detail {

// Depth-first search for a reduction sequence ending in an alternated triple.
// Steps are appended base first.
inline bool find_alternated(const JordanTriple& t, std::set<JordanTriple>& dead,
                            std::vector<ChainStep>& steps, JordanTriple& base) {
  if (alternated_unchecked(t)) {
    base = t;
    return true;
  }
  if (dead.count(t)) return false;
  for (const auto& [p, s] : t.eps_pair) {
    if (s != Sign::kPlus) continue;
    const auto& rho = p.first.rho;
    if (find_alternated(reduce_pair(t, rho, p.first.a, p.second.a), dead, steps, base)) {
      // Only pairs on a successful path need their linking sign; dead
      // branches may have none.
      steps.push_back({rho, p.first.a, p.second.a, linking_sign(t, rho, p.first.a, p.second.a)});
      return true;
    }
  }
  dead.insert(t);
  return false;
}

}  // namespace detail

// A chain from an alternated triple up to t, or nullopt when t dominates no
// alternated triple.
inline std::optional<ReductionChain> is_admissible(const JordanTriple& t) {
  require_valid(t);
  std::set<JordanTriple> dead;
  ReductionChain chain;
  if (!detail::find_alternated(t, dead, chain.steps, chain.base)) return std::nullopt;
  return chain;
}

namespace detail {

inline bool find_path(const JordanTriple& t, const JordanTriple& target,
                      std::set<JordanTriple>& dead, std::vector<JordanTriple>& path) {
  path.push_back(t);
  if (t == target) return true;
  if (t.jord.size() > target.jord.size() && !dead.count(t)) {
    for (const auto& [p, s] : t.eps_pair) {
      if (s != Sign::kPlus) continue;
      if (find_path(reduce_pair(t, p.first.rho, p.first.a, p.second.a), target, dead, path)) {
        return true;
      }
    }
    dead.insert(t);
  }
  path.pop_back();
  return false;
}

}  // namespace detail

// The sequence t = t_k, ..., t_1 = t2 of successive subordinations, or nullopt.
inline std::optional<std::vector<JordanTriple>> dominates(const JordanTriple& t,
                                                          const JordanTriple& t2) {
  require_valid(t);
  require_valid(t2);
  if (t.cusp_id() != t2.cusp_id()) throw DomainError("triples have different cuspidal supports");
  std::set<JordanTriple> dead;
  std::vector<JordanTriple> path;
  if (!detail::find_path(t, t2, dead, path)) return std::nullopt;
  return path;
}

namespace detail {

inline void check_gap(const JordanTriple& t, int a, int b, const CuspidalSymbol& rho) {
  if (!(a < b)) throw DomainError("inserted pair needs a < b");
  if (a <= 0 || !parity_matches(rho.parity, a) || !parity_matches(rho.parity, b)) {
    throw DomainError("inserted pair does not match the parity of " + rho.id);
  }
  for (int x : t.block(rho.id)) {
    if (a <= x && x <= b) {
      throw DomainError(std::to_string(x) + " lies in [" + std::to_string(a) + "," +
                        std::to_string(b) + "]");
    }
  }
}

// Both extensions, +1 branch first. t is assumed admissible.
inline std::vector<JordanTriple> extensions(const JordanTriple& t, int a, int b,
                                            const CuspidalSymbol& rho) {
  check_gap(t, a, b, rho);
  auto values = t.block(rho.id);
  auto right_it = std::upper_bound(values.begin(), values.end(), b);
  std::optional<int> left, right;
  if (right_it != values.begin()) left = *(right_it - 1);
  if (right_it != values.end()) right = *right_it;

  const bool singles = t.cusp->singles_defined(rho);
  if (!singles && !left && !right) {
    throw DomainError("no linking sign available: Jord of " + rho.id + " is empty");
  }

  std::vector<JordanTriple> out;
  for (Sign bit : {Sign::kPlus, Sign::kMinus}) {
    JordanTriple e = t;
    e.jord.insert({rho, a});
    e.jord.insert({rho, b});
    if (left && right) e.eps_pair.erase({{rho, *left}, {rho, *right}});
    e.eps_pair[{{rho, a}, {rho, b}}] = Sign::kPlus;
    if (singles) {
      e.eps_single[{rho, a}] = bit;
      e.eps_single[{rho, b}] = bit;
      if (left) e.eps_pair[{{rho, *left}, {rho, a}}] = *t.single(rho, *left) * bit;
      if (right) e.eps_pair[{{rho, b}, {rho, *right}}] = bit * *t.single(rho, *right);
    } else if (left) {
      e.eps_pair[{{rho, *left}, {rho, a}}] = bit;
      // The bridge left -> right of t must come back as the product.
      if (right) e.eps_pair[{{rho, b}, {rho, *right}}] = bit * *t.pair(rho, *left, *right);
    } else {
      e.eps_pair[{{rho, b}, {rho, *right}}] = bit;
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

// The two admissible triples on Jord u {(a, rho), (b, rho)} with
// eps((a, b)) = +1 that reduce to t by removing (a, b). They differ in the
// linking sign; the +1 branch comes first.
inline std::vector<JordanTriple> dominating_extensions(const JordanTriple& t, int a, int b,
                                                       const CuspidalSymbol& rho) {
  require_valid(t);
  detail::check_gap(t, a, b, rho);
  if (!is_admissible(t)) throw DomainError("triple " + label(t) + " is not admissible");
  return detail::extensions(t, a, b, rho);
}

}  // namespace dsclass
