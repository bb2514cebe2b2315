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

#ifndef TATETOWER_CYCLOTOMIC_H_
#define TATETOWER_CYCLOTOMIC_H_

#include <string>
#include <vector>

#include "tatetower/poly.h"
#include "tatetower/series.h"

namespace tatetower {

// r * [zeta_{2(p-1)}]^zeta_pow * p^x * sigma_K^j as an exact-shape element.
// Integers stay exact; other rationals are embedded at the working digits.
SeriesElement ZetaMonomial(const ContextPtr& ctx, const mpq_class& r,
                           int zeta_pow, const Exponent& x, int sigma_index = 0,
                           int sigma_pow = 0);

// 1 / (p^k (p-1))
Exponent LevelUnit(const PrimeContext& ctx, int k);

struct ZetaExpansion {
  int n = 0;
  SeriesElement element;  // precision 2/(p^{n-2}(p-1))
};

SeriesElement BuildSigma(const ContextPtr& ctx, int n);

// The expansion of a primitive p^n-th root of unity, n >= 2, whose second
// canonical digit is (-1)^n [zeta_{2(p-1)}] at 1/(p^{n-1}(p-1)).
ZetaExpansion BuildZeta(const ContextPtr& ctx, int n);

// Phi_{p^n}(X) = sum_{i<p} X^{i p^{n-1}}
PolyOverK CyclotomicPoly(const ContextPtr& ctx, int n);

struct ResidualReport {
  Exponent precision;            // r
  Exponent value_valuation;      // v(Phi(E)), or the working bound if unseen
  bool value_below_bound = true; // false when Phi(E) vanished to the bound
  Exponent derivative_valuation; // v(Phi'(E))
  bool passed = false;
};

// Newton certificate: E lies within O(p^r) of a root of Phi_{p^n} when
// v(Phi(E)) >= r + v(Phi'(E)). E is lifted to a definite element and
// evaluated with headroom, so the truncation of E does not limit the check.
ResidualReport ResidualCheck(const SeriesElement& e, int n, const Exponent& r);
ResidualReport ResidualCheck(const ZetaExpansion& z);

// Digits of the root of Phi_{p^n} near 1 found by repeated Newton-polygon
// steps on Phi(E + T), independent of BuildZeta. The first nontrivial digit
// is pinned to (-1)^n [zeta_{2(p-1)}]; every later step must have a unique
// residual root.
std::vector<CanonicalDigit> GreedyRootDigits(const ContextPtr& ctx, int n,
                                             const Exponent& window_end);

struct IdentityCheck {
  std::string name;
  SeriesElement lhs;
  SeriesElement rhs;
  Exponent precision;
  bool holds = false;
};

// (zeta_{p^{n+1}} - 1)^{-2p+2} against its closed form, including the
// sigma correction at p = 3.
IdentityCheck CheckInversePower(const ContextPtr& ctx, int n);
SeriesElement BuildInversePower(const ContextPtr& ctx, int n);

struct ABetaElement {
  int n = 0;
  mpq_class beta;
  SeriesElement element;
};

// (-1)^n z p^a sigma_n + beta z^2 p^{2a} sigma_n + O(p^{2a}),
// a = 1/(p^{n-1}(p-1)), z = [zeta_{2(p-1)}].
ABetaElement BuildABeta(const ContextPtr& ctx, int n, const mpq_class& beta);
SeriesElement ABetaPower(const ABetaElement& a, int k);

// A^k against its six-term expansion, 1 <= k <= 2p-1.
IdentityCheck CheckABetaPower(const ContextPtr& ctx, int n,
                              const mpq_class& beta, int k);

// zeta_{p^{n+1}} - sum_{k<p} (-1)^k/k! A^k against its expansion.
IdentityCheck CheckPartialSum(const ContextPtr& ctx, int n,
                              const mpq_class& beta);

// (zeta_{p^{n+1}} - 1)^{-2p+2} (zeta_{p^{n+1}} - sum_{k<p} (-1)^k/k! A^k
//   - sum_{k=1}^{p-1} (-1)^k (k beta - H_k)/k! A^{p+k}).
SeriesElement ProductPipeline(const ContextPtr& ctx, int n,
                              const mpq_class& beta);
IdentityCheck CheckProduct(const ContextPtr& ctx, int n, const mpq_class& beta);

// zeta_{p^{n+1}}^p against zeta_{p^n} at 2/(p^{n-1}(p-1)).
IdentityCheck CheckTowerCompatibility(const ContextPtr& ctx, int n);

}  // namespace tatetower

#endif  // TATETOWER_CYCLOTOMIC_H_
