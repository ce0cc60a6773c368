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
#include <array>
#include <set>
#include <string>

#include "dsclass/errors.hpp"
#include "dsclass/half_int.hpp"
#include "dsclass/segment.hpp"

// Pole-order bookkeeping for the Plancherel measure mu(z, sigma)(s) at s = 0,
// and the Jordan-block update it implies. Two routes are provided: the
// four-ratio order sum (plancherel_order) and the closed form (jord_update).
// They must agree; tests sweep both.

namespace dsclass {

// L(s + alpha, rho x rho~) / L(s + beta, rho x rho~). L(s, rho x rho~) has a
// simple pole at s = 0 and no zeros, so the order at s = 0 is +1 iff alpha = 0
// and -1 iff beta = 0. Replacing s by -s does not change the order.
struct LRatio {
  HalfInt numerator_shift;
  HalfInt denominator_shift;

  int order_at_zero() const {
    int order = 0;
    if (numerator_shift == HalfInt(0)) ++order;
    if (denominator_shift == HalfInt(0)) --order;
    return order;
  }
};

// sigma embeds into nu^x rho x nu^{x-1} rho x ... x nu^y rho >| sigma_ds, and
// base_jord = Jord_rho(sigma_ds).
struct EmbeddingDatum {
  CuspidalSymbol rho;
  HalfInt x;
  HalfInt y;
  std::set<int> base_jord;

  void validate() const {
    HalfInt diff = x - y;
    if (!diff.is_integer() || diff < HalfInt(0)) {
      throw DomainError("x - y must be a nonnegative integer");
    }
    // 2x + 1 is a new Jordan block for rho: positive, with rho's parity.
    // This is also what rules out the zero of L(s + x + (z-1)/2 + 1).
    if (x < HalfInt(0)) throw DomainError("x = " + x.to_string() + " is negative");
    if (!parity_matches(rho.parity, (x + x).as_integer() + 1)) {
      throw DomainError("2x+1 = " + (x + x + 1).to_string() + " has the wrong parity for " +
                        rho.id);
    }
    for (int a : base_jord) {
      if (a <= 0 || !parity_matches(rho.parity, a)) {
        throw DomainError("base Jordan block " + std::to_string(a) + " is invalid for " + rho.id);
      }
    }
  }
};

// The four ratios multiplying mu(z, sigma_ds)(s) in mu(z, sigma)(s), with
// h = (z - 1) / 2:
//   L(s-x+h)/L(s-y+h+1) * L(s+y+h)/L(s+x+h+1)
//     * L(-s-x+h)/L(-s-y+h+1) * L(-s+y+h)/L(-s+x+h+1).
inline std::array<LRatio, 4> plancherel_ratios(int z, const EmbeddingDatum& d) {
  const HalfInt h = half(z - 1);
  const HalfInt one(1);
  return {{
      {h - d.x, h - d.y + one},
      {h + d.y, h + d.x + one},
      {h - d.x, h - d.y + one},
      {h + d.y, h + d.x + one},
  }};
}

// base_order + sum of the ratio orders, before clamping.
inline int plancherel_raw_order(int z, const EmbeddingDatum& d, int base_order) {
  int order = base_order;
  for (const auto& r : plancherel_ratios(z, d)) order += r.order_at_zero();
  return order;
}

// Whether the denominator L(s + x + (z-1)/2 + 1) vanishes at s = 0, i.e.
// x = -(z-1)/2 - 1. Never the case for x >= 0.
inline bool denominator_zero_from_x(int z, const EmbeddingDatum& d) {
  return d.x == -half(z - 1) - HalfInt(1);
}

// Order of mu(z, sigma)(s) at s = 0; 2 iff z is in Jord_rho(sigma). The
// measure has order 0 or 2, so a positive raw order reads as 2.
inline int plancherel_order(int z, const EmbeddingDatum& d, int base_order) {
  d.validate();
  if (z <= 0 || !parity_matches(d.rho.parity, z)) {
    throw DomainError("z = " + std::to_string(z) + " has the wrong parity for " + d.rho.id);
  }
  if (base_order != 0 && base_order != 2) throw DomainError("base order must be 0 or 2");
  if ((base_order == 2) != (d.base_jord.count(z) != 0)) {
    throw DomainError("base order disagrees with the base Jordan block at z = " +
                      std::to_string(z));
  }
  return plancherel_raw_order(z, d, base_order) > 0 ? 2 : 0;
}

// Closed form. For y > 0, 2y-1 must already be a block and is replaced by
// 2x+1; for y <= 0 both 2x+1 and 1-2y are added.
inline std::set<int> jord_update(const EmbeddingDatum& d) {
  d.validate();
  std::set<int> out = d.base_jord;
  const int top = static_cast<int>((d.x + d.x).as_integer()) + 1;
  const int twice_y = static_cast<int>((d.y + d.y).as_integer());
  if (d.y > HalfInt(0)) {
    const int removed = twice_y - 1;
    if (!out.count(removed)) {
      throw DomainError("2y-1 = " + std::to_string(removed) + " is not in the base Jordan block");
    }
    out.erase(removed);
    out.insert(top);
  } else {
    out.insert(top);
    out.insert(1 - twice_y);
  }
  return out;
}

// { z <= z_max of rho's parity : plancherel_order(z) = 2 }.
inline std::set<int> jord_from_plancherel(const EmbeddingDatum& d, int z_max) {
  d.validate();
  std::set<int> out;
  for (int z = 1; z <= z_max; ++z) {
    if (!parity_matches(d.rho.parity, z)) continue;
    int base = d.base_jord.count(z) ? 2 : 0;
    if (plancherel_order(z, d, base) == 2) out.insert(z);
  }
  return out;
}

// A z range wide enough to contain every block the update can produce.
inline int plancherel_search_bound(const EmbeddingDatum& d) {
  int bound = static_cast<int>((d.x + d.x).as_integer()) + 3;
  bound = std::max(bound, 1 - static_cast<int>((d.y + d.y).as_integer()));
  if (!d.base_jord.empty()) bound = std::max(bound, *d.base_jord.rbegin());
  return bound;
}

}  // namespace dsclass
