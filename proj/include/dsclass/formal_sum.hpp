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

#include <concepts>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "dsclass/errors.hpp"
#include "dsclass/segment.hpp"

namespace dsclass {

using Coefficient = std::uint64_t;

// Nonnegative integer combination of terms in a Grothendieck group. Only
// strictly positive coefficients are stored.
template <typename Term>
class FormalSum {
 public:
  using term_type = Term;
  using const_iterator = typename std::map<Term, Coefficient>::const_iterator;

  FormalSum() = default;
  explicit FormalSum(Term t, Coefficient c = 1) { add(std::move(t), c); }

  void add(const Term& t, Coefficient c = 1) {
    if (c != 0) terms_[t] += c;
  }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
  }
  friend FormalSum operator+(FormalSum x, const FormalSum& y) { return x += y; }

  Coefficient coefficient(const Term& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? 0 : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Sum of all coefficients.
  Coefficient total() const {
    Coefficient n = 0;
    for (const auto& [t, c] : terms_) n += c;
    return n;
  }

  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }

  friend bool operator==(const FormalSum&, const FormalSum&) = default;

 private:
  std::map<Term, Coefficient> terms_;
};

// R(GL) (x) R(GL).
using TensorTerm = std::pair<GLTerm, GLTerm>;
// R(GL) (x) R(GL) (x) R(GL), used for coassociativity checks.
using TripleTensorTerm = std::tuple<GLTerm, GLTerm, GLTerm>;

using GLSum = FormalSum<GLTerm>;
using TensorSum = FormalSum<TensorTerm>;
using TripleTensorSum = FormalSum<TripleTensorTerm>;

inline GLTerm term_product(const GLTerm& x, const GLTerm& y) { return x * y; }
inline TensorTerm term_product(const TensorTerm& x, const TensorTerm& y) {
  return {x.first * y.first, x.second * y.second};
}

template <typename Term>
concept MultiplicativeTerm = requires(const Term& t) {
  { term_product(t, t) } -> std::same_as<Term>;
};

// Bilinear extension of the term product. Multiplying sums of different grades
// does not compile.
template <MultiplicativeTerm Term>
FormalSum<Term> sum_mul(const FormalSum<Term>& x, const FormalSum<Term>& y) {
  FormalSum<Term> r;
  for (const auto& [s, c] : x) {
    for (const auto& [t, d] : y) r.add(term_product(s, t), c * d);
  }
  return r;
}

template <MultiplicativeTerm Term>
FormalSum<Term> operator*(const FormalSum<Term>& x, const FormalSum<Term>& y) {
  return sum_mul(x, y);
}

inline GLSum gl_unit() { return GLSum(GLTerm::unit()); }
inline TensorSum tensor_unit() { return TensorSum({GLTerm::unit(), GLTerm::unit()}); }

// m*(delta([nu^a rho, nu^b rho])) =
//   sum_{i=a-1}^{b} delta([nu^{i+1} rho, nu^b rho]) (x) delta([nu^a rho, nu^i rho]).
inline TensorSum seg_mstar(const Segment& s) {
  if (s.empty()) throw DomainError("m* of the empty segment");
  TensorSum r;
  for (HalfInt i = s.a() - 1; i <= s.b(); i += HalfInt(1)) {
    auto left = segment_or_unit(s.rho(), i + 1, s.b());
    auto right = segment_or_unit(s.rho(), s.a(), i);
    r.add({*left, *right});
  }
  return r;
}

// m* extended multiplicatively to a formal product of segments.
inline TensorSum mstar(const GLTerm& t) {
  TensorSum r = tensor_unit();
  for (const auto& s : t.segments()) r = r * seg_mstar(s);
  return r;
}

inline TensorSum mstar(const GLSum& x) {
  TensorSum r;
  for (const auto& [t, c] : x) {
    for (const auto& [u, d] : mstar(t)) r.add(u, c * d);
  }
  return r;
}

// (m* (x) 1) applied to a tensor sum.
inline TripleTensorSum expand_left(const TensorSum& x) {
  TripleTensorSum r;
  for (const auto& [t, c] : x) {
    for (const auto& [u, d] : mstar(t.first)) r.add({u.first, u.second, t.second}, c * d);
  }
  return r;
}

// (1 (x) m*) applied to a tensor sum.
inline TripleTensorSum expand_right(const TensorSum& x) {
  TripleTensorSum r;
  for (const auto& [t, c] : x) {
    for (const auto& [u, d] : mstar(t.second)) r.add({t.first, u.first, u.second}, c * d);
  }
  return r;
}

inline std::string to_string(const TensorTerm& t) {
  return t.first.to_string() + " (x) " + t.second.to_string();
}

}  // namespace dsclass
