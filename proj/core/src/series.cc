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

#include "tatetower/series.h"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "tatetower/error.h"

namespace tatetower {
namespace {

// Ties that survive this many sigma unrollings are reported as ambiguous.
constexpr int kTieDepth = 4;

using Key = std::pair<Exponent, int>;

std::int64_t CheckedPow(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(r, p, &r)) {
      throw Error(ErrorCode::kOverflow,
                  "p^" + std::to_string(k) + " overflows an exponent");
    }
  }
  return r;
}

std::int64_t CheckedMul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::kOverflow, "integer coefficient overflow");
  }
  return r;
}

Precision MinPrec(const Precision& a, const Precision& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

Precision AddPrec(const Precision& a, const Precision& b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

bool Below(const Exponent& v, const Precision& r) { return !r || v < *r; }

void CheckSameContext(const SeriesElement& a, const SeriesElement& b) {
  if (a.context() != b.context() && a.ctx().p() != b.ctx().p()) {
    throw Error(ErrorCode::kInvalidArgument, "elements over different primes");
  }
}

}  // namespace

SeriesElement Normalize(ContextPtr ctx, int sigma_index, std::vector<Term> raw,
                        Precision precision) {
  const PrimeContext& c = *ctx;
  const std::int64_t pk = CheckedPow(c.p(), sigma_index);
  auto val = [pk](const Exponent& x, int j) { return x - Exponent(j, pk); };

  std::map<Key, UnramifiedCoeff> merged;
  for (Term& t : raw) {
    if (t.sigma_pow < 0) {
      throw Error(ErrorCode::kInvalidArgument, "negative sigma power");
    }
    if (t.sigma_pow > 0 && sigma_index < 1) {
      throw Error(ErrorCode::kInvalidArgument, "sigma power without index");
    }
    if (t.coeff.is_zero() && t.coeff.is_exact()) continue;
    if (!Below(val(t.exp, t.sigma_pow), precision)) continue;
    auto [it, fresh] = merged.try_emplace({t.exp, t.sigma_pow}, t.coeff);
    if (!fresh) it->second = c.add(it->second, t.coeff);
  }

  // Pull p-factors into the exponent. A moved term lands on a larger key,
  // so it is visited again later in the same sweep.
  for (auto it = merged.begin(); it != merged.end();) {
    const UnramifiedCoeff& cf = it->second;
    if (cf.is_zero()) {
      if (!cf.is_exact()) {
        precision = MinPrec(precision,
                            val(it->first.first, it->first.second) + cf.digits());
      }
      it = merged.erase(it);
      continue;
    }
    const int t = c.valuation(cf);
    if (t == 0) {
      ++it;
      continue;
    }
    const Key moved{it->first.first + t, it->first.second};
    UnramifiedCoeff shifted = c.shift_down(cf, t);
    it = merged.erase(it);
    auto [dst, fresh] = merged.try_emplace(moved, shifted);
    if (!fresh) dst->second = c.add(dst->second, shifted);
  }

  for (const auto& [k, cf] : merged) {
    if (!cf.is_exact()) {
      precision = MinPrec(precision, val(k.first, k.second) + cf.digits());
    }
  }
  if (precision) {
    for (const auto& [k, cf] : merged) {
      if (cf.is_exact()) {
        precision =
            MinPrec(precision, val(k.first, k.second) + c.max_digits());
      }
    }
  }

  SeriesElement e;
  e.ctx_ = ctx;
  e.precision_ = precision;
  bool any_sigma = false;
  for (const auto& [k, cf] : merged) {
    const Exponent v = val(k.first, k.second);
    if (!Below(v, precision)) continue;
    UnramifiedCoeff kept = cf;
    if (precision) {
      const std::int64_t need = (*precision - v).ceil();
      kept = c.reduce(cf.is_exact() ? c.coeff(cf.a(), cf.b(), c.max_digits())
                                    : cf,
                      static_cast<int>(need));
    }
    any_sigma = any_sigma || k.second > 0;
    e.terms_.push_back(Term{kept, k.first, k.second});
  }
  e.sigma_index_ = any_sigma ? sigma_index : 0;
  e.sigma_den_ = any_sigma ? pk : 1;
  return e;
}

SeriesElement SeriesElement::Zero(ContextPtr ctx, Precision precision) {
  return Normalize(std::move(ctx), 0, {}, precision);
}

SeriesElement SeriesElement::One(ContextPtr ctx, Precision precision) {
  return Integer(std::move(ctx), 1, precision);
}

SeriesElement SeriesElement::Integer(ContextPtr ctx, std::int64_t n,
                                     Precision precision) {
  return Normalize(std::move(ctx), 0, {Term{UnramifiedCoeff::Exact(n), 0, 0}},
                   precision);
}

SeriesElement SeriesElement::Rational(ContextPtr ctx, const mpq_class& r,
                                      Precision precision) {
  if (r == 0) return Zero(std::move(ctx), precision);
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) {
    return Integer(std::move(ctx), r.get_num().get_si(), precision);
  }
  const long t = RationalValuation(r, ctx->p());
  mpq_class unit = r;
  const mpz_class p(static_cast<long>(ctx->p()));
  for (long i = 0; i < t; ++i) unit /= p;
  for (long i = t; i < 0; ++i) unit *= p;
  unit.canonicalize();
  UnramifiedCoeff c = EmbedRational(*ctx, unit, ctx->working_digits());
  return Monomial(std::move(ctx), c, Exponent(t), precision);
}

SeriesElement SeriesElement::Monomial(ContextPtr ctx, const UnramifiedCoeff& c,
                                      const Exponent& exp,
                                      Precision precision) {
  return Normalize(std::move(ctx), 0, {Term{c, exp, 0}}, precision);
}

SeriesElement SeriesElement::Sigma(ContextPtr ctx, int index) {
  if (index < 1) throw Error(ErrorCode::kInvalidArgument, "sigma index < 1");
  return Normalize(std::move(ctx), index,
                   {Term{UnramifiedCoeff::Exact(1), 0, 1}}, std::nullopt);
}

SeriesElement SeriesElement::FromTerms(ContextPtr ctx, int sigma_index,
                                       std::vector<Term> terms,
                                       Precision precision) {
  return Normalize(std::move(ctx), sigma_index, std::move(terms), precision);
}

Exponent SeriesElement::term_valuation(const Term& t) const {
  return t.exp - Exponent(t.sigma_pow, sigma_den_);
}

Precision SeriesElement::min_term_valuation() const {
  if (terms_.empty()) return precision_;
  Exponent m = term_valuation(terms_.front());
  for (const Term& t : terms_) m = std::min(m, term_valuation(t));
  return m;
}

SeriesElement SigmaRewrite(const SeriesElement& e, int k_new) {
  const int k_old = e.sigma_index();
  if (k_old == 0 || k_new == k_old) return e;
  if (k_new < k_old) {
    throw Error(ErrorCode::kInvalidArgument, "sigma index can only increase");
  }
  const PrimeContext& c = e.ctx();
  const std::int64_t pk_new = CheckedPow(c.p(), k_new);
  int max_pow = 0;
  for (const Term& t : e.terms()) max_pow = std::max(max_pow, t.sigma_pow);

  // powers[n] = (sum_{k_old <= k < k_new} p^(-1/p^k))^n as exponent -> count.
  std::vector<std::map<Exponent, std::int64_t>> powers(max_pow + 1);
  powers[0][Exponent(0)] = 1;
  std::vector<Exponent> head;
  for (int k = k_old; k < k_new; ++k) {
    head.push_back(-Exponent(1, CheckedPow(c.p(), k)));
  }
  for (int n = 1; n <= max_pow; ++n) {
    for (const auto& [x, cnt] : powers[n - 1]) {
      for (const Exponent& h : head) powers[n][x + h] += cnt;
    }
  }

  const Precision& r = e.precision();
  std::vector<Term> out;
  for (const Term& t : e.terms()) {
    std::int64_t binom = 1;  // C(j, i), built from i = j downwards
    for (int i = t.sigma_pow; i >= 0; --i) {
      for (const auto& [x, cnt] : powers[t.sigma_pow - i]) {
        const Exponent exp = t.exp + x;
        if (!Below(exp - Exponent(i, pk_new), r)) continue;
        out.push_back(Term{
            c.mul(t.coeff, UnramifiedCoeff::Exact(CheckedMul(binom, cnt))),
            exp, i});
      }
      if (i > 0) binom = CheckedMul(binom, i) / (t.sigma_pow - i + 1);
    }
  }
  return Normalize(e.context(), k_new, std::move(out), r);
}

SeriesElement ReduceSigmaPowers(const SeriesElement& e) {
  const int k = e.sigma_index();
  const std::int64_t p = e.ctx().p();
  if (k == 0) return e;
  const std::int64_t pk = CheckedPow(p, k);
  const Exponent head = -Exponent(1, pk / p);
  const Exponent loss = Exponent(1) - Exponent(p - 1, pk) -
                        Exponent(1, CheckedMul(pk, p));
  Precision r = e.precision();
  std::vector<Term> out;
  std::vector<Term> work = e.terms();
  while (!work.empty()) {
    Term t = work.back();
    work.pop_back();
    if (t.sigma_pow < p) {
      out.push_back(t);
      continue;
    }
    const int rest = t.sigma_pow - static_cast<int>(p);
    r = MinPrec(r, t.exp - Exponent(rest, pk) + loss);
    work.push_back(Term{t.coeff, t.exp + head, rest});
    work.push_back(Term{t.coeff, t.exp, rest + 1});
  }
  return Normalize(e.context(), k, std::move(out), r);
}

SeriesElement Add(const SeriesElement& a, const SeriesElement& b) {
  CheckSameContext(a, b);
  const int k = std::max(a.sigma_index(), b.sigma_index());
  const SeriesElement x = SigmaRewrite(a, k);
  const SeriesElement y = SigmaRewrite(b, k);
  std::vector<Term> terms = x.terms();
  terms.insert(terms.end(), y.terms().begin(), y.terms().end());
  return Normalize(a.context(), k, std::move(terms),
                   MinPrec(a.precision(), b.precision()));
}

SeriesElement Neg(const SeriesElement& a) {
  std::vector<Term> terms = a.terms();
  for (Term& t : terms) t.coeff = a.ctx().neg(t.coeff);
  return Normalize(a.context(), a.sigma_index(), std::move(terms),
                   a.precision());
}

SeriesElement Sub(const SeriesElement& a, const SeriesElement& b) {
  return Add(a, Neg(b));
}

SeriesElement Mul(const SeriesElement& a, const SeriesElement& b) {
  CheckSameContext(a, b);
  const int k = std::max(a.sigma_index(), b.sigma_index());
  const SeriesElement x = SigmaRewrite(a, k);
  const SeriesElement y = SigmaRewrite(b, k);
  const Precision r =
      MinPrec(AddPrec(x.precision(), y.min_term_valuation()),
              AddPrec(y.precision(), x.min_term_valuation()));
  const PrimeContext& c = a.ctx();
  const std::int64_t pk = CheckedPow(c.p(), k);

  std::vector<Term> terms;
  terms.reserve(x.terms().size() * y.terms().size());
  for (const Term& s : x.terms()) {
    for (const Term& t : y.terms()) {
      const Exponent exp = s.exp + t.exp;
      const int j = s.sigma_pow + t.sigma_pow;
      if (!Below(exp - Exponent(j, pk), r)) continue;
      terms.push_back(Term{c.mul(s.coeff, t.coeff), exp, j});
    }
  }
  return Normalize(a.context(), k, std::move(terms), r);
}

SeriesElement Scale(const SeriesElement& a, const UnramifiedCoeff& c) {
  return Mul(a, SeriesElement::Monomial(a.context(), c, 0));
}

SeriesElement ScaleRational(const SeriesElement& a, const mpq_class& r) {
  return Mul(a, SeriesElement::Rational(a.context(), r));
}

Leading LeadingTerm(const SeriesElement& a) {
  SeriesElement cur = a;
  for (int attempt = 0;; ++attempt) {
    if (cur.empty()) {
      throw Error(ErrorCode::kPrecisionLoss,
                  "no term below the precision; valuation unknown");
    }
    const Exponent v = *cur.min_term_valuation();
    Fp2 sum;
    bool has_sigma = false;
    for (const Term& t : cur.terms()) {
      if (cur.term_valuation(t) != v) continue;
      sum = cur.ctx().fp_add(sum, cur.ctx().residue(t.coeff));
      has_sigma = has_sigma || t.sigma_pow > 0;
    }
    if (!sum.is_zero()) return Leading{v, sum};
    if (!has_sigma || attempt == kTieDepth) {
      throw Error(ErrorCode::kAmbiguousLeading,
                  "leading terms cancel at valuation " + v.ToString());
    }
    cur = ReduceSigmaPowers(SigmaRewrite(cur, cur.sigma_index() + 1));
  }
}

Exponent Valuation(const SeriesElement& a) { return LeadingTerm(a).valuation; }

SeriesElement Truncate(const SeriesElement& a, const Exponent& r) {
  if (a.precision() && r > *a.precision()) {
    throw Error(ErrorCode::kPrecisionLoss,
                "cannot raise precision from " + a.precision()->ToString() +
                    " to " + r.ToString());
  }
  return Normalize(a.context(), a.sigma_index(), a.terms(), r);
}

SeriesElement AsExact(const SeriesElement& a) {
  std::vector<Term> terms = a.terms();
  for (Term& t : terms) t.coeff = a.ctx().to_exact(t.coeff);
  return Normalize(a.context(), a.sigma_index(), std::move(terms),
                   std::nullopt);
}

SeriesElement Invert(const SeriesElement& a, Precision target) {
  const ContextPtr& ctx = a.context();
  const PrimeContext& c = *ctx;
  LeadingTerm(a);  // rejects zero and unresolvable inputs

  // Unroll sigma until the minimum is attained by a single plain monomial.
  SeriesElement cur = a;
  const Term* lead = nullptr;
  for (int attempt = 0;; ++attempt) {
    const Exponent v = *cur.min_term_valuation();
    int ties = 0;
    for (const Term& t : cur.terms()) {
      if (cur.term_valuation(t) == v) {
        ++ties;
        lead = &t;
      }
    }
    if (ties == 1 && lead->sigma_pow == 0) break;
    if (attempt == 2 * kTieDepth) {
      throw Error(ErrorCode::kAmbiguousLeading, "leading term not isolated");
    }
    cur = SigmaRewrite(cur, cur.sigma_index() + 1);
  }
  const Exponent y = lead->exp;
  const UnramifiedCoeff lc = lead->coeff;

  const Precision natural = a.precision()
                                ? Precision(*a.precision() - y - y)
                                : std::nullopt;
  if (!target) {
    if (!natural) {
      if (cur.terms().size() == 1 && lc.is_exact() && lc.b() == 0 &&
          (lc.a() == 1 || lc.a() == -1)) {
        return SeriesElement::Monomial(ctx, lc, -y);
      }
      throw Error(ErrorCode::kPrecisionLoss,
                  "inverting an exact element needs a target precision");
    }
    target = natural;
  } else if (natural && *target > *natural) {
    throw Error(ErrorCode::kPrecisionLoss,
                "target " + target->ToString() + " exceeds natural precision " +
                    natural->ToString());
  }
  const Exponent r_out = *target;
  const Exponent rel = r_out + y;
  if (rel <= 0) return SeriesElement::Zero(ctx, r_out);
  if (lc.is_exact() && rel > c.max_digits()) {
    throw Error(ErrorCode::kPrecisionLoss, "target beyond kernel digits");
  }

  const int inv_digits =
      static_cast<int>(std::min<std::int64_t>(rel.ceil() + 1, c.max_digits()));
  const SeriesElement m =
      SeriesElement::Monomial(ctx, c.inverse(lc, inv_digits), -y);
  const SeriesElement w =
      Truncate(Sub(Mul(m, cur), SeriesElement::One(ctx)), rel);
  const SeriesElement minus_w = Neg(w);

  SeriesElement sum = SeriesElement::One(ctx, rel);
  SeriesElement power = SeriesElement::One(ctx);
  if (!w.empty() && *w.min_term_valuation() <= 0) {
    throw Error(ErrorCode::kAmbiguousLeading, "leading term not isolated");
  }
  while (true) {
    power = Truncate(Mul(power, minus_w), rel);
    if (power.empty()) break;
    sum = Add(sum, power);
  }
  return Truncate(Mul(sum, m), r_out);
}

SeriesElement IntPow(const SeriesElement& a, std::int64_t s, Precision target) {
  if (s == 0) {
    SeriesElement one = SeriesElement::One(a.context());
    return target ? Truncate(one, *target) : one;
  }
  SeriesElement base = a;
  std::uint64_t e = static_cast<std::uint64_t>(s);
  if (s < 0) {
    e = static_cast<std::uint64_t>(-s);
    Precision inv_target;
    if (target) {
      inv_target = *target + Exponent(static_cast<std::int64_t>(e) - 1) *
                                 Valuation(a);
    }
    base = Invert(a, inv_target);
  }
  SeriesElement result = SeriesElement::One(a.context());
  while (e > 0) {
    if (e & 1) result = Mul(result, base);
    e >>= 1;
    if (e > 0) base = Mul(base, base);
  }
  return target ? Truncate(result, *target) : result;
}

bool EqualMod(const SeriesElement& a, const SeriesElement& b,
              const Exponent& r) {
  const Precision avail = MinPrec(a.precision(), b.precision());
  if (avail && r > *avail) {
    throw Error(ErrorCode::kPrecisionLoss,
                "comparison at " + r.ToString() + " beyond precision " +
                    avail->ToString());
  }
  SeriesElement d = Truncate(Sub(a, b), r);
  for (int attempt = 0; attempt < kTieDepth && !d.empty(); ++attempt) {
    if (d.sigma_index() == 0) break;
    d = SigmaRewrite(d, d.sigma_index() + 1);
  }
  return d.empty();
}

Precision AccumulationPoint(const SeriesElement& a) {
  Precision acc;
  for (const Term& t : a.terms()) {
    if (t.sigma_pow == 0) continue;
    const auto pk = CheckedPow(a.ctx().p(), a.sigma_index());
    acc = MinPrec(acc, t.exp - Exponent(t.sigma_pow - 1, pk));
  }
  return acc;
}

std::vector<CanonicalDigit> CanonicalDigits(const SeriesElement& a,
                                            const Exponent& window_end) {
  const PrimeContext& c = a.ctx();
  if (a.precision() && window_end > *a.precision()) {
    throw Error(ErrorCode::kPrecisionLoss,
                "window " + window_end.ToString() + " beyond precision " +
                    a.precision()->ToString());
  }
  if (Precision acc = AccumulationPoint(a); acc && window_end >= *acc) {
    throw Error(ErrorCode::kWindowBeyondAccumulation,
                "window " + window_end.ToString() +
                    " reaches the accumulation point " + acc->ToString());
  }

  // Expand sigma^j into plain monomials below the window, with multinomial
  // multiplicities.
  std::map<Exponent, UnramifiedCoeff> acc;
  auto deposit = [&](const Exponent& x, const UnramifiedCoeff& cf) {
    auto [it, fresh] = acc.try_emplace(x, cf);
    if (!fresh) it->second = c.add(it->second, cf);
  };
  for (const Term& t : a.terms()) {
    if (t.sigma_pow == 0) {
      if (t.exp < window_end) deposit(t.exp, t.coeff);
      continue;
    }
    const Exponent gap = t.exp - window_end;  // need sum of parts > gap
    const int j = t.sigma_pow;
    std::int64_t j_fact = 1;
    for (int i = 2; i <= j; ++i) j_fact = CheckedMul(j_fact, i);
    std::function<void(int, int, Exponent, std::int64_t)> dfs =
        [&](int k, int rem, Exponent sum, std::int64_t denom) {
          if (rem == 0) {
            if (sum > gap) {
              deposit(t.exp - sum,
                      c.mul(t.coeff, UnramifiedCoeff::Exact(j_fact / denom)));
            }
            return;
          }
          for (;; ++k) {
            const Exponent part(1, CheckedPow(c.p(), k));
            if (sum + part * rem <= gap) return;
            Exponent s = sum;
            std::int64_t fm = 1;
            for (int m = 1; m <= rem; ++m) {
              s += part;
              fm *= m;
              dfs(k + 1, rem - m, s, CheckedMul(denom, fm));
            }
          }
        };
    dfs(a.sigma_index(), j, Exponent(0), 1);
  }

  // Peel Teichmuller digits from the bottom, carrying into exponent + 1.
  std::vector<CanonicalDigit> digits;
  while (!acc.empty()) {
    auto it = acc.begin();
    const Exponent y = it->first;
    UnramifiedCoeff cf = it->second;
    acc.erase(it);
    const int need = static_cast<int>(
        std::min<std::int64_t>(std::max<std::int64_t>((window_end - y).ceil(), 1),
                               c.max_digits()));
    cf = cf.is_exact() ? c.coeff(cf.a(), cf.b(), need) : c.reduce(cf, need);
    const Fp2 d = c.residue(cf);
    if (!d.is_zero()) {
      digits.push_back(CanonicalDigit{y, d});
      cf = c.sub(cf, Teichmueller(c, d, need));
    }
    if (cf.digits() > 1 && y + 1 < window_end && !cf.is_zero()) {
      deposit(y + 1, c.shift_down(cf, 1));
    }
  }
  return digits;
}

}  // namespace tatetower
