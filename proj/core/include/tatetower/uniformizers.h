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

#ifndef TATETOWER_UNIFORMIZERS_H_
#define TATETOWER_UNIFORMIZERS_H_

#include <string>
#include <vector>

#include "tatetower/series.h"
#include "tatetower/series_json.h"

namespace tatetower {

inline constexpr char kRecurrenceFirst[] = "3,1";
inline constexpr char kRecurrenceStable[] = "≥4,1";

// A polynomial over Z_(p), lowest degree first.
struct RecurrencePolynomial {
  ContextPtr ctx;
  std::string label;
  std::vector<mpq_class> coefficients;
};

// "3,1" or "≥4,1" (">=4,1" is accepted as well):
//   sum_{k<p} (-1)^k/k! T^k + sum_{k=1}^{p-1} (-1)^k (c k - H_k)/k! T^{p+k}
// with c = 1 resp. 2.
RecurrencePolynomial MakeRecurrencePoly(const ContextPtr& ctx,
                                        const std::string& label);

// Horner's scheme in the engine.
SeriesElement EvaluateRecurrence(const RecurrencePolynomial& r,
                                 const SeriesElement& x);

// e_{m,n} = 1/(p^{m+n-1}(p-1))
Exponent TowerUnit(const PrimeContext& ctx, int m, int n);

struct UniformizerCertificate {
  ContextPtr ctx;
  int m = 0;
  int n = 1;
  SeriesElement element;
  Exponent claimed_valuation;
  Exponent valuation;
  bool verified = false;
  // Agreement with the two-term sigma form at 2/(p^{m-1}(p-1)).
  bool expansion_matches = false;
};

// (-1)^m z p^a sigma_m + c z^2 p^{2a} sigma_m, a = 1/(p^{m-1}(p-1)),
// z = [zeta_{2(p-1)}], with c = 1 at m = 2 and c = 2 above.
SeriesElement TwoTermForm(const ContextPtr& ctx, int m);

// Fills claimed_valuation, valuation, verified and (for n = 1)
// expansion_matches from ctx, m, n and element.
void CompleteCertificate(UniformizerCertificate& c);

UniformizerCertificate BuildPi21(const ContextPtr& ctx);

struct TowerLevel {
  UniformizerCertificate certificate;
  // v(zeta_{p^m} - R(pi^{m-1,1})); unset at m = 2.
  Exponent intermediate_valuation;
};

// Levels 2..m_max of the recursion, with R^{3,1} at m = 3 and R^{>=4,1}
// above. Throws kPrecisionExhausted if a level loses its leading term.
std::vector<TowerLevel> BuildTower(const ContextPtr& ctx, int m_max);

// One recursion step from an arbitrary previous level.
TowerLevel StepTower(const ContextPtr& ctx, int m,
                     const SeriesElement& previous,
                     const RecurrencePolynomial& r);

UniformizerCertificate BuildPiM1(const ContextPtr& ctx, int m);
Exponent IntermediateValuation(const ContextPtr& ctx, int m);

struct StabilityLevel {
  int m = 0;
  Exponent observed;
  Exponent expected;  // (2p^2 - 2p + 1) e_{m,1}
  bool passed = false;
};

struct StabilityReport {
  std::vector<StabilityLevel> levels;
  bool passed = false;
};

// R^{>=4,1} at every level 4..m_max; m_max >= 4.
StabilityReport StabilityProbe(const ContextPtr& ctx, int m_max);

Json CertificateToJson(const UniformizerCertificate& c);

}  // namespace tatetower

#endif  // TATETOWER_UNIFORMIZERS_H_
