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

#include "tatetower/maclane.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "tatetower/error.h"

namespace tatetower {
namespace {

std::int64_t PowInt(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

Value AddValue(const Value& a, const Exponent& b) {
  if (!a) return std::nullopt;
  return *a + b;
}

// nullopt compares above everything.
bool Less(const Value& a, const Value& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

Value MinValue(const Value& a, const Value& b) { return Less(b, a) ? b : a; }

bool SamePoly(const PolyOverK& f, const PolyOverK& g) {
  return f.degree() == g.degree() && Sub(f, g).is_zero();
}

// Value of f under the first `count` stages.
Value EvalPrefix(const std::vector<Stage>& stages, std::size_t count,
                 const PolyOverK& f) {
  if (f.is_zero()) return std::nullopt;
  if (count == 0) return GaussVal(f);
  const Stage& s = stages[count - 1];
  if (s.lambda.kind() == KeyValue::Kind::kIrrational) {
    throw Error(ErrorCode::kInvalidChain,
                "irrational key value " + s.lambda.tag() + " cannot be evaluated");
  }
  const std::vector<PolyOverK> a = PhiAdicExpansion(f, s.phi);
  Value best;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    if (i > 0 && s.lambda.kind() == KeyValue::Kind::kInfinite) continue;
    Value vi = EvalPrefix(stages, count - 1, a[i]);
    if (i > 0) vi = AddValue(vi, Exponent(static_cast<std::int64_t>(i)) * s.lambda.value());
    best = MinValue(best, vi);
  }
  return best;
}

// Values v(a_i) + i lambda of the expansion of f in the key of stage `index`.
std::vector<Value> StageValues(const std::vector<Stage>& stages,
                               std::size_t index, const PolyOverK& f) {
  const Stage& s = stages[index];
  if (s.lambda.kind() == KeyValue::Kind::kIrrational) {
    throw Error(ErrorCode::kInvalidChain,
                "irrational key value " + s.lambda.tag() + " cannot be evaluated");
  }
  const std::vector<PolyOverK> a = PhiAdicExpansion(f, s.phi);
  std::vector<Value> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() ||
        (i > 0 && s.lambda.kind() == KeyValue::Kind::kInfinite)) {
      out.push_back(std::nullopt);
      continue;
    }
    Value vi = EvalPrefix(stages, index, a[i]);
    out.push_back(
        AddValue(vi, Exponent(static_cast<std::int64_t>(i)) * s.lambda.value()));
  }
  return out;
}

// The residue of x / y^k in F_p^*, or nullopt.
std::optional<int> PrimeFieldRatio(const PrimeContext& c, const Fp2& x,
                                   const Fp2& y, std::int64_t k) {
  const Fp2 q = c.fp_mul(x, c.fp_inv(c.fp_pow(y, static_cast<std::uint64_t>(k))));
  if (q.is_zero() || !q.in_prime_field()) return std::nullopt;
  return static_cast<int>(q.a);
}

SeriesElement Binomial(const ContextPtr& ctx, int p, int j) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), p, j);
  return SeriesElement::Integer(ctx, c.get_si());
}

// v(a_j) + j lambda for (T + A)^p - Z^p, a_0 written through D = A - Z so
// the cancellation in A^p - Z^p never shows up.
std::vector<int> ChainNewtonSet(const ContextPtr& ctx, const SeriesElement& z,
                                const SeriesElement& a, const Exponent& lambda) {
  const int p = static_cast<int>(ctx->p());
  const SeriesElement dlt = a - z;
  std::vector<Value> values(p + 1);
  SeriesElement a0 = SeriesElement::Zero(ctx);
  SeriesElement dpow = SeriesElement::One(ctx);
  for (int j = 1; j <= p; ++j) {
    dpow = dpow * dlt;
    a0 = a0 + Binomial(ctx, p, j) * IntPow(z, p - j) * dpow;
  }
  values[0] = a0.empty() ? Value(*a0.precision()) : Value(Valuation(a0));
  const Exponent va = Valuation(a);
  for (int j = 1; j <= p; ++j) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), p, j);
    values[j] = Exponent(RationalValuation(mpq_class(c), p)) +
                Exponent(p - j) * va;
  }
  return NewtonSetFromValues(values, lambda);
}

}  // namespace

bool ValueGroup::Contains(const Exponent& x) const {
  return (x * Exponent(ramification)).is_integer();
}

std::int64_t ValueGroup::Index(const Exponent& x) const {
  if (!Contains(x)) {
    throw Error(ErrorCode::kInvalidArgument,
                x.ToString() + " is not in (1/" + std::to_string(ramification) +
                    ")Z");
  }
  return (x * Exponent(ramification)).num();
}

std::string KeyValue::ToString() const {
  switch (kind_) {
    case Kind::kRational:
      return value_.ToString();
    case Kind::kInfinite:
      return "inf";
    case Kind::kIrrational:
      return tag_;
  }
  return "";
}

InductiveValuation InductiveValuation::Augment(const PolyOverK& phi,
                                               const KeyValue& lambda) const {
  if (phi.degree() < 1 || !phi.is_monic()) {
    throw Error(ErrorCode::kInvalidChain, "key polynomial must be monic of degree >= 1");
  }
  if (!stages_.empty()) {
    const Stage& last = stages_.back();
    if (last.lambda.kind() != KeyValue::Kind::kRational) {
      throw Error(ErrorCode::kInvalidChain,
                  "no stage may follow the value " + last.lambda.ToString());
    }
    if (phi.degree() < last.phi.degree()) {
      throw Error(ErrorCode::kInvalidChain, "key degrees must not decrease");
    }
    if (phi.degree() == last.phi.degree() && IsEquiv(*this, phi, last.phi)) {
      throw Error(ErrorCode::kInvalidChain,
                  "key is equivalent to the previous one");
    }
  }
  if (lambda.kind() == KeyValue::Kind::kRational) {
    const Value cur = EvalValuation(*this, phi);
    if (!cur || lambda.value() <= *cur) {
      throw Error(ErrorCode::kInvalidChain,
                  "key value " + lambda.ToString() + " does not exceed " +
                      (cur ? cur->ToString() : std::string("inf")));
    }
  }
  InductiveValuation out = *this;
  out.stages_.push_back(Stage{phi, lambda});
  return out;
}

InductiveValuation InductiveValuation::Prefix(std::size_t count) const {
  InductiveValuation out(ctx_, base_);
  out.stages_.assign(stages_.begin(),
                     stages_.begin() + std::min(count, stages_.size()));
  return out;
}

Value GaussVal(const PolyOverK& f) {
  Value best;
  Value bound;
  for (const SeriesElement& c : f.coeffs()) {
    if (c.is_exact_zero()) continue;
    if (c.empty()) {
      bound = MinValue(bound, *c.precision());
      continue;
    }
    best = MinValue(best, Valuation(c));
  }
  if (bound && !Less(best, bound)) {
    throw Error(ErrorCode::kPrecisionLoss,
                "a coefficient is only known to vanish to " + bound->ToString());
  }
  return best;
}

std::vector<PolyOverK> PhiAdicExpansion(const PolyOverK& f,
                                        const PolyOverK& phi) {
  std::vector<PolyOverK> out;
  PolyOverK rest = f;
  while (!rest.is_zero()) {
    PolyDivision qr = DivMod(rest, phi);
    out.push_back(std::move(qr.remainder));
    rest = std::move(qr.quotient);
  }
  if (out.empty()) out.push_back(PolyOverK());
  return out;
}

Value EvalValuation(const InductiveValuation& v, const PolyOverK& f) {
  return EvalPrefix(v.stages(), v.stages().size(), f);
}

bool IsEquiv(const InductiveValuation& v, const PolyOverK& f,
             const PolyOverK& g) {
  const Value vf = EvalValuation(v, f);
  const Value vd = EvalValuation(v, Sub(f, g));
  if (!vd) return true;
  if (!vf) return false;
  return *vd > *vf;
}

bool EquivDivides(const InductiveValuation& v, const PolyOverK& phi,
                  const PolyOverK& f) {
  const std::vector<Stage>& st = v.stages();
  for (std::size_t s = 0; s < st.size(); ++s) {
    if (!SamePoly(st[s].phi, phi)) continue;
    const std::vector<Value> vals = StageValues(st, s, f);
    if (!vals[0]) return true;
    for (std::size_t i = 1; i < vals.size(); ++i) {
      if (Less(vals[i], vals[0])) return true;
    }
    return false;
  }
  throw Error(ErrorCode::kUnsupportedDivisor,
              "divisibility is only decided for stage keys");
}

std::vector<int> NewtonSetFromValues(const std::vector<Value>& coeff_values,
                                     const Exponent& lambda) {
  Value best;
  std::vector<Value> total;
  for (std::size_t j = 0; j < coeff_values.size(); ++j) {
    total.push_back(AddValue(coeff_values[j],
                             Exponent(static_cast<std::int64_t>(j)) * lambda));
    best = MinValue(best, total.back());
  }
  std::vector<int> out;
  if (!best) return out;
  for (std::size_t j = 0; j < total.size(); ++j) {
    if (total[j] && *total[j] == *best) out.push_back(static_cast<int>(j));
  }
  return out;
}

std::vector<int> NewtonSet(const InductiveValuation& v, const PolyOverK& g) {
  if (v.stages().empty()) {
    throw Error(ErrorCode::kInvalidChain, "newton set needs a stage");
  }
  const std::vector<Value> vals = StageValues(v.stages(), v.stages().size() - 1, g);
  Value best;
  for (const Value& x : vals) best = MinValue(best, x);
  std::vector<int> out;
  if (!best) return out;
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (vals[j] && *vals[j] == *best) out.push_back(static_cast<int>(j));
  }
  return out;
}

InductiveValuation Collapse(const InductiveValuation& v) {
  for (std::size_t i = 0; i + 1 < v.stages_.size(); ++i) {
    if (v.stages_[i].phi.degree() == v.stages_[i + 1].phi.degree()) {
      InductiveValuation out = v;
      out.stages_.erase(out.stages_.begin() + static_cast<std::ptrdiff_t>(i));
      return out;
    }
  }
  throw Error(ErrorCode::kNotCollapsible,
              "no two consecutive keys share a degree");
}

std::string PointTypeName(PointType t) {
  switch (t) {
    case PointType::kTypeI:
      return "TypeI";
    case PointType::kTypeII:
      return "TypeII";
    case PointType::kTypeIII:
      return "TypeIII";
  }
  return "";
}

PointType Classify(const InductiveValuation& v) {
  if (v.stages().empty()) return PointType::kTypeII;
  switch (v.stages().back().lambda.kind()) {
    case KeyValue::Kind::kInfinite:
      return PointType::kTypeI;
    case KeyValue::Kind::kRational:
      return PointType::kTypeII;
    case KeyValue::Kind::kIrrational:
      return PointType::kTypeIII;
  }
  return PointType::kTypeII;
}

Seminorm AsSeminorm(const InductiveValuation& v, const PolyOverK& f) {
  Seminorm s;
  s.base = v.context()->p();
  const Value x = EvalValuation(v, f);
  if (x) s.exponent = -*x;
  return s;
}

Degree1Chain RunDegree1Chain(const ContextPtr& ctx, int m, int n,
                             const SeriesElement& pi_base,
                             const ZetaExpansion& zeta_level) {
  if (m < 2 || n < 1 || zeta_level.n != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "chain needs m >= 2, n >= 1 and zeta at level m");
  }
  const PrimeContext& c = *ctx;
  const std::int64_t p = c.p();
  const Exponent e_base = TowerUnit(c, m - 1, n);
  const ValueGroup group{PowInt(p, m + n - 2) * (p - 1)};
  if (Valuation(pi_base) != e_base) {
    throw Error(ErrorCode::kInvalidArgument,
                "base uniformizer has valuation " +
                    Valuation(pi_base).ToString() + ", expected " +
                    e_base.ToString());
  }
  const Fp2 u0 = LeadingTerm(pi_base).residue;
  const SeriesElement& z = zeta_level.element;

  Degree1Chain chain;
  chain.m = m;
  chain.n = n;
  chain.a = SeriesElement::Zero(ctx);
  std::vector<SeriesElement> powers{SeriesElement::One(ctx)};
  while (true) {
    const SeriesElement delta = z - chain.a;
    if (delta.empty()) {
      throw Error(ErrorCode::kPrecisionExhausted,
                  "zeta - A vanishes to " + delta.precision()->ToString());
    }
    const Leading lead = LeadingTerm(delta);
    const Exponent x = lead.valuation;
    if (!chain.digits.empty()) {
      ChainStage s;
      s.center = chain.a;
      s.lambda = x;
      s.newton_set = ChainNewtonSet(ctx, z, chain.a, x);
      s.degree_relation =
          !s.newton_set.empty() &&
          s.newton_set.back() - s.newton_set.front() == static_cast<int>(p);
      chain.stages.push_back(std::move(s));
    }
    if (!group.Contains(x)) {
      chain.stop_valuation = x;
      break;
    }
    const std::int64_t k = group.Index(x);
    const std::optional<int> t = PrimeFieldRatio(c, lead.residue, u0, k);
    if (!t) {
      chain.stop_valuation = x;
      break;
    }
    while (static_cast<std::int64_t>(powers.size()) <= k) {
      powers.push_back(powers.back() * pi_base);
    }
    chain.digits.resize(static_cast<std::size_t>(k) + 1, 0);
    chain.digits[k] = *t;
    chain.a = chain.a + SeriesElement::Integer(ctx, *t) * powers[k];
  }
  const Exponent ratio = chain.stop_valuation / TowerUnit(c, m, n);
  if (!ratio.is_integer() || ratio.num() <= 0 ||
      std::gcd(ratio.num(), p) != 1) {
    throw Error(ErrorCode::kNonCoprimeStop,
                "stop valuation " + chain.stop_valuation.ToString() +
                    " gives d = " + ratio.ToString());
  }
  chain.d = ratio.num();
  return chain;
}

InductiveValuation ChainValuation(const Degree1Chain& chain) {
  const ContextPtr& ctx = chain.a.context();
  const std::int64_t p = ctx->p();
  InductiveValuation v(ctx, ValueGroup{PowInt(p, chain.m + chain.n - 2) * (p - 1)});
  for (const ChainStage& s : chain.stages) {
    v = v.Augment(PolyOverK::Linear(s.center), KeyValue::Rational(s.lambda));
  }
  return v;
}

DigitExpansion DigitExpand(const ContextPtr& ctx, const SeriesElement& a,
                           const SeriesElement& pi, const Exponent& r) {
  const PrimeContext& c = *ctx;
  const Exponent e = Valuation(pi);
  const std::int64_t top = (r / e).ceil();
  const Fp2 u0 = LeadingTerm(pi).residue;
  DigitExpansion out;
  SeriesElement rest = a;
  SeriesElement power = SeriesElement::One(ctx);
  for (std::int64_t k = 0; k <= top; ++k) {
    if (k > 0) power = power * pi;
    if (rest.empty()) break;
    const Leading lead = LeadingTerm(rest);
    const Exponent here = Exponent(k) * e;
    if (lead.valuation < here) {
      throw Error(ErrorCode::kNotInGroundField,
                  "leading exponent " + lead.valuation.ToString() +
                      " is not a multiple of " + e.ToString());
    }
    if (lead.valuation > here) {
      out.digits.push_back(0);
      continue;
    }
    const std::optional<int> t = PrimeFieldRatio(c, lead.residue, u0, k);
    if (!t) {
      throw Error(ErrorCode::kNotInGroundField,
                  "leading residue at " + here.ToString() + " is not in F_p");
    }
    out.digits.push_back(*t);
    rest = rest - SeriesElement::Integer(ctx, *t) * power;
  }
  while (!out.digits.empty() && out.digits.back() == 0) out.digits.pop_back();
  if (rest.is_exact_zero()) return out;
  out.residual_bound = rest.empty() ? *rest.precision() : Valuation(rest);
  if (*out.residual_bound <= r) {
    throw Error(ErrorCode::kPrecisionExhausted,
                "remainder known only to " + out.residual_bound->ToString() +
                    ", need more than " + r.ToString());
  }
  return out;
}

AssembledUniformizer AssembleUniformizer(const ContextPtr& ctx, int m, int n,
                                         const Degree1Chain& chain,
                                         const SeriesElement& pi_base,
                                         const ZetaExpansion& zeta_level) {
  const std::int64_t p = ctx->p();
  const DigitExpansion de =
      DigitExpand(ctx, chain.a, pi_base, chain.stop_valuation);
  AssembledUniformizer out;
  UniformizerRecipe& rec = out.recipe;
  rec.ctx = ctx;
  rec.m = m;
  rec.n = n;
  rec.d = chain.d;
  rec.r.ctx = ctx;
  rec.r.label = "maclane(" + std::to_string(m) + "," + std::to_string(n) + ")";
  for (int t : de.digits) rec.r.coefficients.emplace_back(t);
  if (rec.r.coefficients.empty()) rec.r.coefficients.emplace_back(0);
  const BezoutResult b = Bezout(mpz_class(PowInt(p, n)), mpz_class(chain.d));
  if (b.g != 1) {
    throw Error(ErrorCode::kNonCoprimeStop,
                "gcd(p^n, d) = " + b.g.get_str());
  }
  rec.alpha = b.x.get_si();
  rec.beta = b.y.get_si();

  const SeriesElement& z = zeta_level.element;
  const SeriesElement near = z - EvaluateRecurrence(rec.r, pi_base);
  const SeriesElement far = z - SeriesElement::One(ctx);
  UniformizerCertificate& cert = out.certificate;
  cert.ctx = ctx;
  cert.m = m;
  cert.n = n;
  cert.element = IntPow(far, rec.alpha) * IntPow(near, rec.beta);
  CompleteCertificate(cert);
  return out;
}

AssembledUniformizer MacLaneUniformizer(const ContextPtr& ctx, int m, int n,
                                        const SeriesElement& pi_base) {
  const ZetaExpansion z = BuildZeta(ctx, m);
  const Degree1Chain chain = RunDegree1Chain(ctx, m, n, pi_base, z);
  return AssembleUniformizer(ctx, m, n, chain, pi_base, z);
}

Json RecipeToJson(const AssembledUniformizer& a) {
  Json j;
  j["p"] = a.recipe.ctx->p();
  j["m"] = a.recipe.m;
  j["n"] = a.recipe.n;
  Json digits = Json::array();
  for (const mpq_class& c : a.recipe.r.coefficients) digits.push_back(c.get_num().get_si());
  j["R_digits"] = digits;
  j["d"] = a.recipe.d;
  j["alpha"] = a.recipe.alpha;
  j["beta"] = a.recipe.beta;
  j["valuation"] = ExponentToJson(a.certificate.valuation);
  j["verified"] = a.certificate.verified;
  return j;
}

}  // namespace tatetower
