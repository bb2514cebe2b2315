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

#ifndef TATETOWER_ARITH_H_
#define TATETOWER_ARITH_H_

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace tatetower {

// Element a + b*s of F_{p^2} = F_p[s] / (s^2 - nu), with 0 <= a, b < p.
struct Fp2 {
  std::int64_t a = 0;
  std::int64_t b = 0;

  bool is_zero() const { return a == 0 && b == 0; }
  bool in_prime_field() const { return b == 0; }
  friend bool operator==(const Fp2&, const Fp2&) = default;
};

// Element a + b*s of W(F_{p^2}) = Z_p[s] / (s^2 - nu), known modulo p^L.
//
// Finite coefficients keep 0 <= a, b < p^L. Exact coefficients (L == kExact)
// are plain integers in Z[s] and may be negative; they arise from integer
// constants and from lifting truncated data to a fixed representative.
class UnramifiedCoeff {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();

  UnramifiedCoeff() = default;

  static UnramifiedCoeff Exact(std::int64_t a, std::int64_t b = 0) {
    UnramifiedCoeff c;
    c.a_ = a;
    c.b_ = b;
    c.digits_ = kExact;
    return c;
  }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  // Number of known p-adic digits, or kExact.
  int digits() const { return digits_; }
  bool is_exact() const { return digits_ == kExact; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  friend bool operator==(const UnramifiedCoeff&,
                         const UnramifiedCoeff&) = default;

 private:
  friend class PrimeContext;

  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  int digits_ = kExact;
};

// Everything that depends on the prime: the F_{p^2} model, the coefficient
// ring modulo p^L, and the distinguished element of order 2(p-1).
// Immutable after construction and shared between elements.
class PrimeContext {
 public:
  static constexpr int kDefaultWorkingDigits = 12;

  // Throws Error(kInvalidArgument) unless p is an odd prime small enough for
  // the 64-bit coefficient kernel.
  static std::shared_ptr<const PrimeContext> Create(
      std::int64_t p, int working_digits = kDefaultWorkingDigits);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return p_ * p_; }
  // The quadratic non-residue nu with s^2 = nu.
  std::int64_t nonresidue() const { return nu_; }
  // Element of F_{p^2}^* of exact order 2(p-1).
  const Fp2& generator_2p2() const { return generator_; }
  // Digits used when embedding constants that are not exact integers.
  int working_digits() const { return working_digits_; }
  // Largest L for which p^L fits the 64-bit kernel.
  int max_digits() const { return max_digits_; }
  // p^k for 0 <= k <= max_digits().
  std::int64_t pow_p(int k) const;
  // Teichmuller lift of generator_2p2() at max_digits().
  const UnramifiedCoeff& zeta_2p2() const { return zeta_; }

  // --- F_{p^2} ---
  Fp2 fp_add(const Fp2& x, const Fp2& y) const;
  Fp2 fp_sub(const Fp2& x, const Fp2& y) const;
  Fp2 fp_mul(const Fp2& x, const Fp2& y) const;
  Fp2 fp_pow(Fp2 x, std::uint64_t e) const;
  Fp2 fp_inv(const Fp2& x) const;
  Fp2 fp_from_int(std::int64_t v) const;
  // Multiplicative order of a nonzero element.
  std::uint64_t fp_order(const Fp2& x) const;
  // Code in 0..p^2-1 used by the JSON digit encoding: a + p*b.
  std::int64_t fp_encode(const Fp2& x) const { return x.a + p_ * x.b; }
  Fp2 fp_decode(std::int64_t code) const;

  // --- W(F_{p^2}) / p^L ---
  UnramifiedCoeff coeff(std::int64_t a, std::int64_t b, int digits) const;
  UnramifiedCoeff reduce(const UnramifiedCoeff& c, int digits) const;
  UnramifiedCoeff add(const UnramifiedCoeff& x, const UnramifiedCoeff& y) const;
  UnramifiedCoeff sub(const UnramifiedCoeff& x, const UnramifiedCoeff& y) const;
  UnramifiedCoeff neg(const UnramifiedCoeff& x) const;
  UnramifiedCoeff mul(const UnramifiedCoeff& x, const UnramifiedCoeff& y) const;
  UnramifiedCoeff pow(UnramifiedCoeff x, std::uint64_t e) const;
  // Inverse of a unit. Exact inputs are first reduced to `digits`.
  UnramifiedCoeff inverse(const UnramifiedCoeff& x, int digits) const;
  // Largest t with p^t | x; equals digits() for a finite zero and kExact for
  // an exact zero.
  int valuation(const UnramifiedCoeff& x) const;
  // x / p^t for t <= valuation(x); a finite input loses t digits.
  UnramifiedCoeff shift_down(const UnramifiedCoeff& x, int t) const;
  Fp2 residue(const UnramifiedCoeff& x) const;
  // Balanced integer representatives, as an exact coefficient.
  UnramifiedCoeff to_exact(const UnramifiedCoeff& x) const;

 private:
  PrimeContext() = default;

  std::int64_t p_ = 0;
  std::int64_t nu_ = 0;
  int working_digits_ = 0;
  int max_digits_ = 0;
  std::vector<std::int64_t> pow_p_;
  Fp2 generator_;
  UnramifiedCoeff zeta_;
};

using ContextPtr = std::shared_ptr<const PrimeContext>;

// Teichmuller lift of u to `digits` digits: the unique (q-1)-th root of unity
// (or 0) congruent to u modulo p.
UnramifiedCoeff Teichmueller(const PrimeContext& ctx, const Fp2& u, int digits);

// H_k = 1 + 1/2 + ... + 1/k.
mpq_class Harmonic(unsigned k);

// r reduced modulo p^digits. Throws kDenominatorDivisibleByP.
UnramifiedCoeff EmbedRational(const PrimeContext& ctx, const mpq_class& r,
                              int digits);

// p-adic valuation of a nonzero rational.
long RationalValuation(const mpq_class& r, std::int64_t p);

struct BezoutResult {
  mpz_class x;
  mpz_class y;
  mpz_class g;
};

// a*x + b*y = g = gcd(a, b) with 0 <= y < a/g whenever a > 0.
BezoutResult Bezout(const mpz_class& a, const mpz_class& b);

mpz_class Factorial(unsigned k);

}  // namespace tatetower

#endif  // TATETOWER_ARITH_H_
