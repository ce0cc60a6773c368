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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsclass/errors.hpp"
#include "dsclass/triple.hpp"

namespace dsclass {

namespace detail {

struct Pick {
  CuspidalSymbol rho;
  int lower;
  int upper;
};

// The pair removed first when walking an admissible triple down to its
// alternated base: the smallest symbol id with a +1 pair; within it, the +1
// pair with the largest upper element for even type, the smallest for odd.
inline std::optional<Pick> canonical_pick(const JordanTriple& t) {
  for (const auto& rho : t.symbols()) {
    std::vector<std::pair<int, int>> plus;  // (lower, upper), ascending
    auto values = t.block(rho.id);
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (t.pair(rho, values[i - 1], values[i]) == Sign::kPlus) {
        plus.emplace_back(values[i - 1], values[i]);
      }
    }
    if (plus.empty()) continue;
    auto chosen = rho.parity == Parity::kEven ? plus.back() : plus.front();
    return Pick{rho, chosen.first, chosen.second};
  }
  return std::nullopt;
}

}  // namespace detail

// The deterministic reduction chain of an admissible triple.
inline ReductionChain canonical_chain(const JordanTriple& t) {
  if (!is_admissible(t)) throw DomainError("triple " + label(t) + " is not admissible");
  ReductionChain chain;
  JordanTriple cur = t;
  while (!alternated_unchecked(cur)) {
    auto pick = detail::canonical_pick(cur);
    if (!pick) {
      throw std::logic_error("canonical reduction of " + label(t) + " stalled at " + label(cur));
    }
    chain.steps.push_back(
        {pick->rho, pick->lower, pick->upper, linking_sign(cur, pick->rho, pick->lower, pick->upper)});
    cur = reduce_pair(cur, pick->rho, pick->lower, pick->upper);
  }
  chain.base = std::move(cur);
  std::reverse(chain.steps.begin(), chain.steps.end());
  return chain;
}

// Checks the ordering rule for inserting step on top of below: every +1 pair
// (b_, b) of the same symbol already present must satisfy step.lower > b_ for
// even type, step.upper < b for odd type. Returns a description on failure.
inline std::optional<std::string> ordering_violation(const JordanTriple& below,
                                                     const ChainStep& step) {
  auto values = below.block(step.rho.id);
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (below.pair(step.rho, values[i - 1], values[i]) != Sign::kPlus) continue;
    bool ok = step.rho.parity == Parity::kEven ? step.lower > values[i - 1] : step.upper < values[i];
    if (!ok) {
      return "step (" + std::to_string(step.lower) + "," + std::to_string(step.upper) +
             ") of " + step.rho.id + " conflicts with the +1 pair (" +
             std::to_string(values[i - 1]) + "," + std::to_string(values[i]) + ")";
    }
  }
  return std::nullopt;
}

// Rebuilds the triple of a chain by inserting each step's pair and keeping
// the extension whose linking sign matches the step.
inline JordanTriple realize_chain(const ReductionChain& chain) {
  require_valid(chain.base);
  if (!alternated_unchecked(chain.base)) {
    throw DomainError("chain base " + label(chain.base) + " is not of alternated type");
  }
  JordanTriple cur = chain.base;
  for (const auto& step : chain.steps) {
    if (auto why = ordering_violation(cur, step)) throw DomainError(*why);
    auto options = detail::extensions(cur, step.lower, step.upper, step.rho);
    auto it = std::find_if(options.begin(), options.end(), [&](const JordanTriple& e) {
      return linking_sign(e, step.rho, step.lower, step.upper) == step.sign;
    });
    cur = std::move(*it);
  }
  return cur;
}

struct EnumerationBounds {
  int max_a = 0;
  std::vector<CuspidalSymbol> symbols;
  std::optional<std::size_t> max_jord;
  // Allowed values of |Jord|; empty means any.
  std::set<std::size_t> sizes;

  bool admits_size(std::size_t n) const {
    if (max_jord && n > *max_jord) return false;
    return sizes.empty() || sizes.count(n) != 0;
  }
};

namespace detail {

struct BlockChoice {
  std::vector<int> values;
  std::vector<Sign> signs;  // singles when defined, else adjacent pairs
};

inline std::vector<Sign> signs_from_bits(std::size_t n, std::uint64_t bits) {
  std::vector<Sign> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back((bits >> i) & 1 ? Sign::kMinus : Sign::kPlus);
  return out;
}

// Every epsilon assignment on Jord_rho = values.
inline std::vector<BlockChoice> epsilon_choices(const CuspidalSupport& cusp,
                                                const CuspidalSymbol& rho,
                                                const std::vector<int>& values) {
  std::vector<BlockChoice> out;
  if (values.empty()) {
    out.push_back({});
    return out;
  }
  std::size_t free = cusp.singles_defined(rho) ? values.size() : values.size() - 1;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free); ++bits) {
    out.push_back({values, signs_from_bits(free, bits)});
  }
  return out;
}

inline void apply_choice(JordanTriple& t, const CuspidalSymbol& rho, const BlockChoice& c) {
  if (c.values.empty()) return;
  if (t.cusp->singles_defined(rho)) {
    t.add_with_singles(rho, c.values, c.signs);
  } else {
    t.add_with_pairs(rho, c.values, c.signs);
  }
}

inline std::vector<JordanTriple> all_triples_on(const CuspPtr& cusp,
                                                const std::map<CuspidalSymbol, std::set<int>>& jord) {
  std::vector<JordanTriple> partial{JordanTriple(cusp)};
  for (const auto& [rho, block] : jord) {
    std::vector<int> values(block.begin(), block.end());
    auto choices = epsilon_choices(*cusp, rho, values);
    std::vector<JordanTriple> next;
    for (const auto& t : partial) {
      for (const auto& c : choices) {
        JordanTriple u = t;
        apply_choice(u, rho, c);
        next.push_back(std::move(u));
      }
    }
    partial = std::move(next);
  }
  return partial;
}

}  // namespace detail

// Every admissible triple with Jord inside bounds.symbols x [1, max_a], in
// canonical order.
inline std::vector<JordanTriple> enumerate_admissible(const CuspPtr& cusp,
                                                      const EnumerationBounds& bounds) {
  std::vector<std::vector<int>> candidates;
  for (const auto& rho : bounds.symbols) {
    std::vector<int> c;
    for (int a = 1; a <= bounds.max_a; ++a) {
      if (parity_matches(rho.parity, a)) c.push_back(a);
    }
    if (c.size() > 20) throw DomainError("enumeration bounds too large");
    candidates.push_back(std::move(c));
  }

  std::set<JordanTriple> found;
  // Odometer over one subset mask per symbol.
  std::vector<std::uint64_t> mask(bounds.symbols.size(), 0);
  while (true) {
    std::map<CuspidalSymbol, std::set<int>> jord;
    std::size_t size = 0;
    for (std::size_t s = 0; s < mask.size(); ++s) {
      std::set<int> block;
      for (std::size_t i = 0; i < candidates[s].size(); ++i) {
        if ((mask[s] >> i) & 1) block.insert(candidates[s][i]);
      }
      size += block.size();
      jord[bounds.symbols[s]] = std::move(block);
    }
    if (bounds.admits_size(size)) {
      for (auto& t : detail::all_triples_on(cusp, jord)) {
        if (is_admissible(t)) found.insert(std::move(t));
      }
    }
    std::size_t s = 0;
    for (; s < mask.size(); ++s) {
      if (++mask[s] < (std::uint64_t{1} << candidates[s].size())) break;
      mask[s] = 0;
    }
    if (s == mask.size()) break;
  }
  return {found.begin(), found.end()};
}

// Number of epsilon functions making (jord, cusp, epsilon) admissible.
inline std::uint64_t count_by_jord(const CuspPtr& cusp,
                                   const std::map<CuspidalSymbol, std::set<int>>& jord) {
  for (const auto& [rho, block] : jord) {
    for (int a : block) {
      if (a <= 0 || !parity_matches(rho.parity, a)) {
        throw DomainError(std::to_string(a) + " does not match the parity of " + rho.id);
      }
    }
  }
  std::uint64_t n = 0;
  for (const auto& t : detail::all_triples_on(cusp, jord)) {
    if (is_admissible(t)) ++n;
  }
  return n;
}

}  // namespace dsclass
