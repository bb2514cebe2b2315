// Copyright 2026 The tatetower Authors
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

#ifndef TATETOWER_EXPONENT_H_
#define TATETOWER_EXPONENT_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace tatetower {

// Exact rational number with 64-bit numerator and denominator, kept in
// lowest terms with a positive denominator. Every operation is checked and
// throws Error(kOverflow) instead of wrapping. Exponents in the tower have
// denominators of the form p^k (p-1), far inside this range.
class Exponent {
 public:
  constexpr Exponent() = default;
  constexpr Exponent(std::int64_t n) : num_(n), den_(1) {}  // NOLINT
  Exponent(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  std::int64_t floor() const;
  std::int64_t ceil() const;

  Exponent operator-() const;
  Exponent& operator+=(const Exponent& o);
  Exponent& operator-=(const Exponent& o);
  Exponent& operator*=(const Exponent& o);
  Exponent& operator/=(const Exponent& o);

  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }
  friend Exponent operator*(Exponent a, const Exponent& b) { return a *= b; }
  friend Exponent operator/(Exponent a, const Exponent& b) { return a /= b; }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Exponent& a,
                                          const Exponent& b) {
    const __int128 l = static_cast<__int128>(a.num_) * b.den_;
    const __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  // "n" for integers, "n/d" otherwise.
  std::string ToString() const;

 private:
  static Exponent FromWide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace tatetower

template <>
struct std::hash<tatetower::Exponent> {
  std::size_t operator()(const tatetower::Exponent& e) const noexcept {
    return std::hash<std::int64_t>()(e.num()) * 1000003u ^
           std::hash<std::int64_t>()(e.den());
  }
};

#endif  // TATETOWER_EXPONENT_H_
