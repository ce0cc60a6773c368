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

#include <charconv>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "dsclass/errors.hpp"

namespace dsclass {

// Exact element of (1/2)Z. Stored as twice its value so that every operation
// used by the segment calculus stays in the integers.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(std::int64_t whole) : twice_(2 * whole) {}

  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  // Only meaningful when is_integer().
  constexpr std::int64_t as_integer() const { return twice_ / 2; }

  // x / 2, defined when x is an integer.
  constexpr HalfInt halved() const {
    if (!is_integer()) throw DomainError("cannot halve non-integral " + to_string());
    return from_twice(twice_ / 2);
  }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr HalfInt operator+(HalfInt a, std::int64_t b) { return a + HalfInt(b); }
  friend constexpr HalfInt operator-(HalfInt a, std::int64_t b) { return a - HalfInt(b); }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
  friend constexpr bool operator==(HalfInt, HalfInt) = default;

  // "3", "-1/2", "5/2".
  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  // Accepts an optionally signed integer n or n/2.
  static HalfInt parse(std::string_view text) {
    auto fail = [&]() -> ParseError {
      return ParseError("malformed half-integer '" + std::string(text) + "'");
    };
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) throw fail();

    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::int64_t n = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
    if (ec != std::errc() || p != num.data() + num.size()) throw fail();
    if (slash == std::string_view::npos) return HalfInt(n);
    if (text.substr(slash + 1) != "2") throw fail();
    return from_twice(n);
  }

 private:
  std::int64_t twice_ = 0;
};

// n / 2 as a HalfInt.
constexpr HalfInt half(std::int64_t n) { return HalfInt::from_twice(n); }

inline std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.to_string(); }

}  // namespace dsclass
