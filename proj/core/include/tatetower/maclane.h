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

#ifndef TATETOWER_MACLANE_H_
#define TATETOWER_MACLANE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tatetower/cyclotomic.h"
#include "tatetower/poly.h"
#include "tatetower/series.h"
#include "tatetower/series_json.h"
#include "tatetower/uniformizers.h"

namespace tatetower {

// Gamma = (1/E) Z
struct ValueGroup {
  std::int64_t ramification = 1;
  bool Contains(const Exponent& x) const;
  // x / (1/E) when x lies in the group.
  std::int64_t Index(const Exponent& x) const;
};

// A value of a pseudo-valuation; nullopt is infinity.
using Value = std::optional<Exponent>;

// A key value: rational, infinite, or an irrational constant known only by
// name. Irrational values are accepted for classification and nothing else.
class KeyValue {
 public:
  enum class Kind { kRational, kInfinite, kIrrational };

  static KeyValue Rational(const Exponent& x) { return KeyValue(Kind::kRational, x, {}); }
  static KeyValue Infinite() { return KeyValue(Kind::kInfinite, {}, {}); }
  static KeyValue Irrational(std::string tag) {
    return KeyValue(Kind::kIrrational, {}, std::move(tag));
  }

  Kind kind() const { return kind_; }
  const Exponent& value() const { return value_; }
  const std::string& tag() const { return tag_; }
  std::string ToString() const;

 private:
  KeyValue(Kind k, Exponent v, std::string t)
      : kind_(k), value_(v), tag_(std::move(t)) {}
  Kind kind_;
  Exponent value_;
  std::string tag_;
};

struct Stage {
  PolyOverK phi;
  KeyValue lambda;
};

// [v_G, v_1(phi_1) = lambda_1, ..., v_k(phi_k) = lambda_k] over the ground
// field whose coefficients are series elements.
class InductiveValuation {
 public:
  InductiveValuation(ContextPtr ctx, ValueGroup base)
      : ctx_(std::move(ctx)), base_(base) {}

  // Appends a stage after checking the representation conditions: phi monic
  // of degree >= the previous key, lambda > current value of phi, phi not
  // equivalent to the previous key, and nothing after an infinite value.
  // Throws kInvalidChain.
  InductiveValuation Augment(const PolyOverK& phi, const KeyValue& lambda) const;

  const ContextPtr& context() const { return ctx_; }
  const ValueGroup& base_group() const { return base_; }
  const std::vector<Stage>& stages() const { return stages_; }
  // The chain cut after `count` stages.
  InductiveValuation Prefix(std::size_t count) const;

 private:
  friend InductiveValuation Collapse(const InductiveValuation& v);
  ContextPtr ctx_;
  ValueGroup base_;
  std::vector<Stage> stages_;
};

// min over coefficients of v_p; infinity for the zero polynomial.
Value GaussVal(const PolyOverK& f);

// Coefficients a_i with deg a_i < deg phi and sum a_i phi^i = f.
std::vector<PolyOverK> PhiAdicExpansion(const PolyOverK& f,
                                        const PolyOverK& phi);

Value EvalValuation(const InductiveValuation& v, const PolyOverK& f);

// v(f - g) > v(f), or both zero.
bool IsEquiv(const InductiveValuation& v, const PolyOverK& f,
             const PolyOverK& g);

// phi |_v f for phi the key of some stage, judged on the chain cut at that
// stage: the minimum of v(a_i) + i lambda is not attained at i = 0.
// Throws kUnsupportedDivisor when phi is not a stage key.
bool EquivDivides(const InductiveValuation& v, const PolyOverK& phi,
                  const PolyOverK& f);

// Indices j at which v(g_j) + j lambda is minimal, for the last stage of v.
std::vector<int> NewtonSet(const InductiveValuation& v, const PolyOverK& g);

// Same from the values v(g_j) of an expansion computed elsewhere.
std::vector<int> NewtonSetFromValues(const std::vector<Value>& coeff_values,
                                     const Exponent& lambda);

// Drops the earlier stage of the first consecutive pair of keys with equal
// degree. Throws kNotCollapsible without such a pair.
InductiveValuation Collapse(const InductiveValuation& v);

enum class PointType { kTypeI, kTypeII, kTypeIII };
std::string PointTypeName(PointType t);
PointType Classify(const InductiveValuation& v);

// p^{-v(f)}, or zero when v(f) is infinite.
struct Seminorm {
  std::int64_t base = 0;
  std::optional<Exponent> exponent;
  bool is_zero() const { return !exponent.has_value(); }
};
Seminorm AsSeminorm(const InductiveValuation& v, const PolyOverK& f);

// One degree-1 stage of the greedy chain: key T - center, value lambda.
struct ChainStage {
  SeriesElement center;
  Exponent lambda;
  std::vector<int> newton_set;  // of G_m = T^p - zeta_{p^{m-1}}
  bool degree_relation = false; // (max N - min N) * 1 == p
};

struct Degree1Chain {
  int m = 0;
  int n = 0;
  SeriesElement a;           // A_m = sum t_k pi^k
  std::vector<int> digits;   // t_k in 0..p-1, one per power of pi
  std::vector<ChainStage> stages;
  Exponent stop_valuation;   // v(zeta_{p^m} - A_m) = d e_{m,n}
  std::int64_t d = 0;
};

// Greedy full-element matching of zeta_{p^m} by sums of t_k pi^k. A step is
// taken while the leading monomial u p^x of zeta - A has x = k e_{m-1,n} and
// u / u_0^k in F_p^*, u_0 the leading residue of pi; the difference then
// loses that monomial and the sigma tail of pi^k stays in play.
// Throws kPrecisionExhausted when the difference vanishes to the available
// precision and kNonCoprimeStop when p | d.
Degree1Chain RunDegree1Chain(const ContextPtr& ctx, int m, int n,
                             const SeriesElement& pi_base,
                             const ZetaExpansion& zeta_level);

// The chain's degree-1 stages as an inductive valuation over K^{m-1,n}.
InductiveValuation ChainValuation(const Degree1Chain& chain);

struct DigitExpansion {
  std::vector<int> digits;  // a_0 .. a_N, N = ceil(r / e)
  // v(A - R(pi)), the precision if unseen, nullopt for an exact zero
  Precision residual_bound;
};

// Digits a_k in 0..p-1 with v(A - sum a_k pi^k) > r. Throws
// kPrecisionExhausted when the remainder is unseen at or below r and
// kNotInGroundField when a leading monomial is not a ground-field one.
DigitExpansion DigitExpand(const ContextPtr& ctx, const SeriesElement& a,
                           const SeriesElement& pi, const Exponent& r);

struct UniformizerRecipe {
  ContextPtr ctx;
  int m = 0;
  int n = 0;
  RecurrencePolynomial r;  // label "maclane(m,n)", digits 0..p-1
  std::int64_t d = 0;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
};

struct AssembledUniformizer {
  UniformizerRecipe recipe;
  UniformizerCertificate certificate;
};

// (alpha, beta) with alpha p^n + beta d = 1, 0 <= beta < p^n, and
// pi = (zeta - 1)^alpha (zeta - R(pi_base))^beta.
AssembledUniformizer AssembleUniformizer(const ContextPtr& ctx, int m, int n,
                                         const Degree1Chain& chain,
                                         const SeriesElement& pi_base,
                                         const ZetaExpansion& zeta_level);

// Full path: chain, digits at r = d e_{m,n}, assembly.
AssembledUniformizer MacLaneUniformizer(const ContextPtr& ctx, int m, int n,
                                        const SeriesElement& pi_base);

Json RecipeToJson(const AssembledUniformizer& a);

}  // namespace tatetower

#endif  // TATETOWER_MACLANE_H_
