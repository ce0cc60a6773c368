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

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "dsclass/errors.hpp"
#include "dsclass/formal_sum.hpp"
#include "dsclass/segment.hpp"

namespace dsclass {

// A named G-object treated as an atom: the partial cuspidal support, or an
// opaque discrete series whose mu* is supplied as fixture data.
struct GBase {
  std::string id;
  std::int64_t degree = 0;

  friend bool operator==(const GBase& x, const GBase& y) { return x.id == y.id; }
  friend std::strong_ordering operator<=>(const GBase& x, const GBase& y) { return x.id <=> y.id; }
};

// pi_1 x pi_2 x ... x pi_k >| base, with the GL factors kept in induction
// order. k = 0 is the base object itself.
class GSpinTerm {
 public:
  GSpinTerm() = default;
  explicit GSpinTerm(GBase base, std::vector<GLTerm> induced = {})
      : base_(std::move(base)) {
    for (auto& t : induced) {
      if (!t.is_unit()) induced_.push_back(std::move(t));
    }
  }

  const GBase& base() const { return base_; }
  const std::vector<GLTerm>& induced() const { return induced_; }
  bool is_base() const { return induced_.empty(); }

  std::int64_t degree() const {
    std::int64_t d = base_.degree;
    for (const auto& t : induced_) d += t.degree();
    return d;
  }

  // pi >| (this), flattened by induction in stages.
  GSpinTerm induced_from(const GLTerm& pi) const {
    GSpinTerm r = *this;
    if (!pi.is_unit()) r.induced_.insert(r.induced_.begin(), pi);
    return r;
  }

  // The same object with all GL factors multiplied into one formal product.
  // Two orders of induction agree in R(G) after flattening.
  GSpinTerm flattened() const {
    GLTerm all;
    for (const auto& t : induced_) all = all * t;
    return GSpinTerm(base_, {all});
  }

  std::string to_string() const {
    std::string out;
    for (const auto& t : induced_) {
      bool wrap = t.segments().size() > 1;
      out += wrap ? "(" + t.to_string() + ")" : t.to_string();
      out += " x ";
    }
    if (!induced_.empty()) {
      out.resize(out.size() - 3);
      out += " >| ";
    }
    return out + base_.id;
  }

  friend bool operator==(const GSpinTerm& x, const GSpinTerm& y) {
    return x.base_ == y.base_ && x.induced_ == y.induced_;
  }
  friend auto operator<=>(const GSpinTerm& x, const GSpinTerm& y) {
    if (auto c = x.base_ <=> y.base_; c != 0) return c;
    return std::lexicographical_compare_three_way(x.induced_.begin(), x.induced_.end(),
                                                  y.induced_.begin(), y.induced_.end());
  }

 private:
  GBase base_;
  std::vector<GLTerm> induced_;
};

// R(GL) (x) R(G).
using MixedTerm = std::pair<GLTerm, GSpinTerm>;
using MixedSum = FormalSum<MixedTerm>;

inline std::string to_string(const MixedTerm& t) {
  return t.first.to_string() + " (x) " + t.second.to_string();
}

// Flattens every G-side of a sum; used to compare different induction orders.
inline MixedSum flatten(const MixedSum& x) {
  MixedSum r;
  for (const auto& [t, c] : x) r.add({t.first, t.second.flattened()}, c);
  return r;
}

// True iff every term's GL degree plus G degree equals total.
inline bool gl_degree_check(const MixedSum& sum, std::int64_t total) {
  for (const auto& [t, c] : sum) {
    if (t.first.degree() + t.second.degree() != total) return false;
  }
  return true;
}

class MuStarTable;
MixedSum mu_star_induced(const Segment& seg, const GSpinTerm& sigma, MuStarTable& table);

// Known values of mu*. Base objects must be declared before anything built on
// them can be expanded; induced objects are expanded on demand and memoized.
// Concurrent lookups share the lock; inserts take it exclusively.
class MuStarTable {
 public:
  MuStarTable() = default;
  MuStarTable(const MuStarTable&) = delete;
  MuStarTable& operator=(const MuStarTable&) = delete;

  // A cuspidal base: mu*(sigma_cusp) = 1 (x) sigma_cusp.
  void add_cuspidal(const GBase& base) {
    GSpinTerm obj(base);
    store(obj, MixedSum({GLTerm::unit(), obj}));
  }

  // A base object with its mu* supplied. The entry must contain 1 (x) base
  // with coefficient 1, no other term with trivial GL part, and conserve degree.
  void add_fixture(const GBase& base, MixedSum mu) {
    GSpinTerm obj(base);
    if (mu.coefficient({GLTerm::unit(), obj}) != 1) {
      throw DomainError("mu* of " + base.id + " must contain 1 (x) " + base.id + " once");
    }
    for (const auto& [t, c] : mu) {
      if (t.first.is_unit() && !(t.second == obj)) {
        throw DomainError("mu* of " + base.id + " has a second term with trivial GL part");
      }
    }
    if (!gl_degree_check(mu, base.degree)) {
      throw DomainError("mu* of " + base.id + " does not conserve degree");
    }
    store(obj, std::move(mu));
  }

  bool has_base(const std::string& id) const {
    std::shared_lock lock(mutex_);
    return bases_.count(id) != 0;
  }

  std::optional<MixedSum> find(const GSpinTerm& obj) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(obj);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

  void store(const GSpinTerm& obj, MixedSum mu) {
    std::unique_lock lock(mutex_);
    if (obj.is_base()) bases_.insert(obj.base().id);
    entries_.emplace(obj, std::move(mu));
  }

  // mu*(obj): table lookup, otherwise expansion by the structural formula one
  // segment at a time.
  MixedSum mu_star(const GSpinTerm& obj) {
    if (auto hit = find(obj)) return *hit;
    if (obj.is_base()) throw DomainError("no mu* known for '" + obj.base().id + "'");

    const auto& factors = obj.induced();
    const GLTerm& first = factors.front();
    const Segment& seg = first.segments().front();
    std::vector<GLTerm> rest_factors;
    rest_factors.emplace_back(
        std::vector<Segment>(first.segments().begin() + 1, first.segments().end()));
    rest_factors.insert(rest_factors.end(), factors.begin() + 1, factors.end());
    GSpinTerm rest(obj.base(), std::move(rest_factors));

    MixedSum result = mu_star_induced(seg, rest, *this);
    store(obj, result);
    return result;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<GSpinTerm, MixedSum> entries_;
  std::set<std::string> bases_;
};

// mu*(delta([nu^{-k} rho, nu^l rho]) >| sigma) =
//   sum_{i=-k-1}^{l} sum_{j=i}^{l} sum_{tau (x) sigma' in mu*(sigma)}
//     delta([nu^{-i} rho, nu^k rho]) x delta([nu^{j+1} rho, nu^l rho]) x tau
//       (x) delta([nu^{i+1} rho, nu^j rho]) >| sigma'.
// The result is memoized in the table under the induced object.
inline MixedSum mu_star_induced(const Segment& seg, const GSpinTerm& sigma, MuStarTable& table) {
  if (seg.empty()) throw DomainError("structural formula needs a nonempty segment");
  if (!table.has_base(sigma.base().id)) {
    throw DomainError("'" + sigma.base().id + "' is missing from the mu* table");
  }
  const CuspidalSymbol& rho = seg.rho();
  const HalfInt k = -seg.a();
  const HalfInt l = seg.b();

  const MixedSum base = table.mu_star(sigma);
  MixedSum result;
  const HalfInt one(1);
  for (HalfInt i = -k - 1; i <= l; i += one) {
    auto outer = segment_or_unit(rho, -i, k);
    if (!outer) continue;
    for (HalfInt j = i; j <= l; j += one) {
      auto tail = segment_or_unit(rho, j + 1, l);
      auto middle = segment_or_unit(rho, i + 1, j);
      if (!tail || !middle) continue;
      const GLTerm gl = *outer * *tail;
      for (const auto& [term, c] : base) {
        result.add({gl * term.first, term.second.induced_from(*middle)}, c);
      }
    }
  }
  table.store(sigma.induced_from(GLTerm(seg)), result);
  return result;
}

}  // namespace dsclass
