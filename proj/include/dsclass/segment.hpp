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
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dsclass/errors.hpp"
#include "dsclass/half_int.hpp"

namespace dsclass {

// Even: Jordan-block entries for the symbol are even (L(s, rho, r) has a pole
// at s = 0). Odd otherwise.
enum class Parity { kEven, kOdd };

inline const char* to_string(Parity p) { return p == Parity::kEven ? "even" : "odd"; }

inline bool parity_matches(Parity p, std::int64_t a) {
  return (a % 2 == 0) == (p == Parity::kEven);
}

// A self-dual cuspidal GL representation, known only through its name, the GL
// rank it lives on and its parity type. Identity is the id.
struct CuspidalSymbol {
  std::string id;
  int rank = 1;
  Parity parity = Parity::kOdd;

  friend bool operator==(const CuspidalSymbol& a, const CuspidalSymbol& b) { return a.id == b.id; }
  friend std::strong_ordering operator<=>(const CuspidalSymbol& a, const CuspidalSymbol& b) {
    return a.id <=> b.id;
  }
};

// delta([nu^a rho, nu^b rho]). b - a must be an integer >= -1; b - a = -1 is
// the empty segment, which stands for the unit.
class Segment {
 public:
  Segment(CuspidalSymbol rho, HalfInt a, HalfInt b) : rho_(std::move(rho)), a_(a), b_(b) {
    HalfInt len = b_ - a_;
    if (!len.is_integer() || len < HalfInt(-1)) {
      throw DomainError("invalid segment [" + a_.to_string() + "," + b_.to_string() + "]");
    }
  }

  const CuspidalSymbol& rho() const { return rho_; }
  HalfInt a() const { return a_; }
  HalfInt b() const { return b_; }

  bool empty() const { return b_ - a_ == HalfInt(-1); }

  // Number of cuspidal twists in the segment.
  std::int64_t length() const { return (b_ - a_).as_integer() + 1; }
  std::int64_t degree() const { return length() * rho_.rank; }

  // e(delta) = (a + b) / 2.
  HalfInt exponent() const {
    if (empty()) throw DomainError("exponent of the empty segment");
    return (a_ + b_).halved();
  }

  std::string to_string() const {
    return rho_.id + "[" + a_.to_string() + "," + b_.to_string() + "]";
  }

  friend bool operator==(const Segment& x, const Segment& y) {
    return x.rho_ == y.rho_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const Segment& x, const Segment& y) {
    if (auto c = x.rho_ <=> y.rho_; c != 0) return c;
    if (auto c = x.a_ <=> y.a_; c != 0) return c;
    return x.b_ <=> y.b_;
  }

 private:
  CuspidalSymbol rho_;
  HalfInt a_;
  HalfInt b_;
};

inline std::ostream& operator<<(std::ostream& os, const Segment& s) { return os << s.to_string(); }

// e(delta([nu^a rho, nu^b rho])).
inline HalfInt seg_e(const Segment& s) { return s.exponent(); }

// A formal product of nonempty segments in R(GL). The product is commutative,
// so segments are kept sorted by (rho id, a, b); the empty product is 1.
class GLTerm {
 public:
  GLTerm() = default;
  explicit GLTerm(Segment s) {
    if (!s.empty()) segments_.push_back(std::move(s));
  }
  explicit GLTerm(std::vector<Segment> segs) {
    for (auto& s : segs) {
      if (!s.empty()) segments_.push_back(std::move(s));
    }
    std::sort(segments_.begin(), segments_.end());
  }

  static GLTerm unit() { return GLTerm(); }

  bool is_unit() const { return segments_.empty(); }
  const std::vector<Segment>& segments() const { return segments_; }

  std::int64_t degree() const {
    std::int64_t d = 0;
    for (const auto& s : segments_) d += s.degree();
    return d;
  }

  friend GLTerm operator*(const GLTerm& x, const GLTerm& y) {
    GLTerm r;
    r.segments_.reserve(x.segments_.size() + y.segments_.size());
    std::merge(x.segments_.begin(), x.segments_.end(), y.segments_.begin(), y.segments_.end(),
               std::back_inserter(r.segments_));
    return r;
  }

  std::string to_string() const {
    if (segments_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      if (i) out += " x ";
      out += segments_[i].to_string();
    }
    return out;
  }

  friend bool operator==(const GLTerm&, const GLTerm&) = default;
  friend auto operator<=>(const GLTerm& x, const GLTerm& y) {
    return std::lexicographical_compare_three_way(x.segments_.begin(), x.segments_.end(),
                                                  y.segments_.begin(), y.segments_.end());
  }

 private:
  std::vector<Segment> segments_;
};

inline std::ostream& operator<<(std::ostream& os, const GLTerm& t) { return os << t.to_string(); }

// delta([nu^x rho, nu^y rho]) under the collapsing convention: the unit when
// x = y + 1, zero (nullopt) when x > y + 1.
inline std::optional<GLTerm> segment_or_unit(const CuspidalSymbol& rho, HalfInt x, HalfInt y) {
  HalfInt len = y - x;
  if (!len.is_integer()) throw DomainError("segment endpoints differ by a non-integer");
  if (len < HalfInt(-1)) return std::nullopt;
  return GLTerm(Segment(rho, x, y));
}

}  // namespace dsclass
