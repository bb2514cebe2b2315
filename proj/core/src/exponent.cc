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

#include "tatetower/exponent.h"

#include <limits>

#include "tatetower/error.h"

namespace tatetower {
namespace {

__int128 Gcd(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Exponent::Exponent(std::int64_t num, std::int64_t den) {
  *this = FromWide(num, den);
}

Exponent Exponent::FromWide(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = Gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
  if (num > kMax || num < -kMax || den > kMax) {
    throw Error(ErrorCode::kOverflow, "exponent out of 64-bit range");
  }
  Exponent e;
  e.num_ = static_cast<std::int64_t>(num);
  e.den_ = static_cast<std::int64_t>(den);
  return e;
}

std::int64_t Exponent::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Exponent::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Exponent Exponent::operator-() const {
  Exponent e;
  e.num_ = -num_;
  e.den_ = den_;
  return e;
}

Exponent& Exponent::operator+=(const Exponent& o) {
  if (den_ == o.den_) {
    *this = FromWide(static_cast<__int128>(num_) + o.num_, den_);
  } else {
    *this = FromWide(static_cast<__int128>(num_) * o.den_ +
                         static_cast<__int128>(o.num_) * den_,
                     static_cast<__int128>(den_) * o.den_);
  }
  return *this;
}

Exponent& Exponent::operator-=(const Exponent& o) { return *this += -o; }

Exponent& Exponent::operator*=(const Exponent& o) {
  *this = FromWide(static_cast<__int128>(num_) * o.num_,
                   static_cast<__int128>(den_) * o.den_);
  return *this;
}

Exponent& Exponent::operator/=(const Exponent& o) {
  if (o.num_ == 0) throw Error(ErrorCode::kInvalidArgument, "division by 0");
  *this = FromWide(static_cast<__int128>(num_) * o.den_,
                   static_cast<__int128>(den_) * o.num_);
  return *this;
}

std::string Exponent::ToString() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace tatetower
