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

#ifndef TATETOWER_SERIES_H_
#define TATETOWER_SERIES_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "tatetower/arith.h"
#include "tatetower/exponent.h"

namespace tatetower {

// Absolute precision of an element: the O(p^r) marker, or nullopt for an
// exact element.
using Precision = std::optional<Exponent>;

// coeff * p^exp * sigma_K^sigma_pow, where K is the index of the enclosing
// element and sigma_K = sum_{k >= K} p^(-1/p^k).
struct Term {
  UnramifiedCoeff coeff;
  Exponent exp;
  int sigma_pow = 0;
};

// A truncated Mal'cev-Neumann element: a finite sum of Terms plus O(p^r).
//
// Normal form, enforced by every constructor:
//   * coefficients are units; a factor p^t is moved into the exponent;
//   * no two terms share (exp, sigma_pow); terms are sorted by that key;
//   * every term has valuation exp - sigma_pow/p^K below the precision;
//   * a term's coefficient keeps exactly the digits that lie below the
//     precision, and the precision never exceeds what the digits support;
//   * the sigma index is 0 when no term carries a sigma power.
//
// Precision rules: add -> min(r_a, r_b); mul -> min(r_a + v_b, r_b + v_a)
// with v the smallest term valuation (or r itself for an element without
// terms), which is a lower bound for the true valuation.
class SeriesElement {
 public:
  SeriesElement() = default;

  static SeriesElement Zero(ContextPtr ctx, Precision precision = {});
  static SeriesElement One(ContextPtr ctx, Precision precision = {});
  static SeriesElement Integer(ContextPtr ctx, std::int64_t n,
                               Precision precision = {});
  // Integers are exact; other rationals are embedded at the context's
  // working digits.
  static SeriesElement Rational(ContextPtr ctx, const mpq_class& r,
                                Precision precision = {});
  static SeriesElement Monomial(ContextPtr ctx, const UnramifiedCoeff& c,
                                const Exponent& exp, Precision precision = {});
  // The exact symbol sigma_K.
  static SeriesElement Sigma(ContextPtr ctx, int index);
  static SeriesElement FromTerms(ContextPtr ctx, int sigma_index,
                                 std::vector<Term> terms, Precision precision);

  const ContextPtr& context() const { return ctx_; }
  const PrimeContext& ctx() const { return *ctx_; }
  int sigma_index() const { return sigma_index_; }
  const std::vector<Term>& terms() const { return terms_; }
  const Precision& precision() const { return precision_; }
  bool is_exact() const { return !precision_.has_value(); }
  // True when no term lies below the precision.
  bool empty() const { return terms_.empty(); }
  bool is_exact_zero() const { return terms_.empty() && is_exact(); }

  Exponent term_valuation(const Term& t) const;
  // Smallest term valuation; the precision when there are no terms.
  // nullopt only for an exact zero.
  Precision min_term_valuation() const;

 private:
  friend SeriesElement Normalize(ContextPtr ctx, int sigma_index,
                                 std::vector<Term> raw, Precision precision);

  ContextPtr ctx_;
  int sigma_index_ = 0;
  std::int64_t sigma_den_ = 1;  // p^K
  std::vector<Term> terms_;
  Precision precision_;
};

// Builds the normal form from arbitrary terms.
SeriesElement Normalize(ContextPtr ctx, int sigma_index, std::vector<Term> raw,
                        Precision precision);

// Rewrites every sigma_K power in terms of sigma_{k_new}, using
// sigma_K = p^(-1/p^K) + ... + p^(-1/p^(k_new-1)) + sigma_{k_new}.
SeriesElement SigmaRewrite(const SeriesElement& e, int k_new);

// Lowers every sigma power j >= p with
//   sigma_K^p = p^(-1/p^(K-1)) + sigma_K + u,
//   v(u) >= 1 - (p-1)/p^K - 1/p^(K+1),
// where u collects the multinomial cross terms, all divisible by p. The
// dropped u terms lower the precision accordingly. Without this step
// products such as sigma_K^p - sigma_{K-1} never separate by unrolling alone.
SeriesElement ReduceSigmaPowers(const SeriesElement& e);

SeriesElement Add(const SeriesElement& a, const SeriesElement& b);
SeriesElement Sub(const SeriesElement& a, const SeriesElement& b);
SeriesElement Neg(const SeriesElement& a);
SeriesElement Mul(const SeriesElement& a, const SeriesElement& b);
SeriesElement Scale(const SeriesElement& a, const UnramifiedCoeff& c);
SeriesElement ScaleRational(const SeriesElement& a, const mpq_class& r);

inline SeriesElement operator+(const SeriesElement& a, const SeriesElement& b) {
  return Add(a, b);
}
inline SeriesElement operator-(const SeriesElement& a, const SeriesElement& b) {
  return Sub(a, b);
}
inline SeriesElement operator-(const SeriesElement& a) { return Neg(a); }
inline SeriesElement operator*(const SeriesElement& a, const SeriesElement& b) {
  return Mul(a, b);
}

struct Leading {
  Exponent valuation;
  Fp2 residue;  // nonzero
};

// Valuation and leading residue. Terms tied at the minimum whose leading
// residues cancel are separated by unrolling sigma one more step and
// lowering the powers >= p; if that does not settle it the call throws
// kAmbiguousLeading. An element without terms throws kPrecisionLoss.
Leading LeadingTerm(const SeriesElement& a);
Exponent Valuation(const SeriesElement& a);

// Drops everything at or above r. Throws kPrecisionLoss if r exceeds the
// element's precision.
SeriesElement Truncate(const SeriesElement& a, const Exponent& r);

// Same terms with integer representatives as exact coefficients and no
// O-term: a definite element that agrees with `a` to its precision.
SeriesElement AsExact(const SeriesElement& a);

// 1/a. Without a target the natural precision r_a - 2 v(a) is used.
// Throws kPrecisionLoss when the target exceeds it, or when an exact input
// has no target and is not a monomial with coefficient +-1.
SeriesElement Invert(const SeriesElement& a, Precision target = {});

// a^s by binary powering; negative s goes through Invert.
SeriesElement IntPow(const SeriesElement& a, std::int64_t s,
                     Precision target = {});

// True iff a - b vanishes modulo p^r, i.e. every term of the difference has
// valuation >= r. Requires r <= min(r_a, r_b) (kPrecisionLoss otherwise).
bool EqualMod(const SeriesElement& a, const SeriesElement& b,
              const Exponent& r);

struct CanonicalDigit {
  Exponent exp;
  Fp2 digit;
  friend bool operator==(const CanonicalDigit&, const CanonicalDigit&) = default;
};

// The Teichmuller-digit expansion sum [d_x] p^x of `a` below `window_end`.
// The window must lie at or below the precision (kPrecisionLoss) and
// strictly below the lowest accumulation point of the sigma terms,
// exp - (j-1)/p^K for a term carrying sigma^j (kWindowBeyondAccumulation).
std::vector<CanonicalDigit> CanonicalDigits(const SeriesElement& a,
                                            const Exponent& window_end);

// Smallest accumulation point of the support, or nullopt without sigma terms.
Precision AccumulationPoint(const SeriesElement& a);

}  // namespace tatetower

#endif  // TATETOWER_SERIES_H_
