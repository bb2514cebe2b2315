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

#include "tatetower/cyclotomic.h"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "tatetower/error.h"

namespace tatetower {
namespace {

int Sign(long e) { return e % 2 == 0 ? 1 : -1; }

mpq_class InvFactorial(unsigned k) { return mpq_class(1, Factorial(k)); }

std::int64_t PowInt(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

void RequireLevel(int n, int min_level) {
  if (n < min_level) {
    throw Error(ErrorCode::kInvalidArgument,
                "level must be >= " + std::to_string(min_level) + ", got " +
                    std::to_string(n));
  }
}

IdentityCheck Compare(std::string name, SeriesElement lhs, SeriesElement rhs,
                      const Exponent& r) {
  IdentityCheck c{std::move(name), Truncate(lhs, r), Truncate(rhs, r), r,
                  false};
  c.holds = EqualMod(c.lhs, c.rhs, r);
  return c;
}

}  // namespace

SeriesElement ZetaMonomial(const ContextPtr& ctx, const mpq_class& r,
                           int zeta_pow, const Exponent& x, int sigma_index,
                           int sigma_pow) {
  if (r == 0) return SeriesElement::Zero(ctx);
  const SeriesElement scalar = SeriesElement::Rational(ctx, r);
  const int order = static_cast<int>(2 * (ctx->p() - 1));
  const int zp = ((zeta_pow % order) + order) % order;
  const UnramifiedCoeff z =
      zp == 0 ? UnramifiedCoeff::Exact(1) : ctx->pow(ctx->zeta_2p2(), zp);
  const SeriesElement shape = SeriesElement::FromTerms(
      ctx, sigma_index, {Term{z, x, sigma_pow}}, std::nullopt);
  return Mul(scalar, shape);
}

Exponent LevelUnit(const PrimeContext& ctx, int k) {
  return Exponent(1, PowInt(ctx.p(), k) * (ctx.p() - 1));
}

SeriesElement BuildSigma(const ContextPtr& ctx, int n) {
  return SeriesElement::Sigma(ctx, n);
}

ZetaExpansion BuildZeta(const ContextPtr& ctx, int n) {
  RequireLevel(n, 2);
  const std::int64_t p = ctx->p();
  const Exponent d = LevelUnit(*ctx, n - 1);
  const Exponent r = 2 * LevelUnit(*ctx, n - 2);

  SeriesElement z = SeriesElement::Zero(ctx);
  for (int k = 0; k < p; ++k) {
    z = z + ZetaMonomial(ctx, Sign(n * k) * InvFactorial(k), k, k * d);
    z = z + ZetaMonomial(ctx, Sign(n * (k + 1)) * InvFactorial(k), k + 1,
                         (k + p) * d, n, 1);
    if (k >= 1) {
      z = z - ZetaMonomial(ctx, Harmonic(k) * InvFactorial(k) * Sign(n * (k + 1)),
                           k + 1, (k + p) * d);
    }
  }
  z = z + ZetaMonomial(ctx, mpq_class(1, 2), 2, r, n, 2);
  z = z + ZetaMonomial(ctx, mpq_class(Sign(n), 2), 3,
                       r - Exponent(p - 2, PowInt(p, n) * (p - 1)));
  return ZetaExpansion{n, Truncate(z, r)};
}

PolyOverK CyclotomicPoly(const ContextPtr& ctx, int n) {
  RequireLevel(n, 1);
  const std::int64_t step = PowInt(ctx->p(), n - 1);
  std::vector<SeriesElement> c(step * (ctx->p() - 1) + 1,
                               SeriesElement::Zero(ctx));
  for (std::int64_t i = 0; i < ctx->p(); ++i) {
    c[i * step] = SeriesElement::One(ctx);
  }
  return PolyOverK(ctx, std::move(c));
}

constexpr int kMaxUnroll = 3;

ResidualReport ResidualCheck(const SeriesElement& e, int n, const Exponent& r) {
  RequireLevel(n, 1);
  const ContextPtr& ctx = e.context();
  const std::int64_t p = ctx->p();
  const Exponent work = r + n + 1;
  const SeriesElement x = Truncate(AsExact(e), work);

  const std::int64_t step = PowInt(p, n - 1);
  const SeriesElement y = IntPow(x, step);
  SeriesElement value = SeriesElement::One(ctx);
  for (int i = 1; i < p; ++i) value = value * y + SeriesElement::One(ctx);
  // d/dX sum Y^i = p^{n-1} X^{p^{n-1}-1} sum i Y^{i-1}
  SeriesElement inner = SeriesElement::Integer(ctx, p - 1);
  for (std::int64_t i = p - 2; i >= 1; --i) {
    inner = inner * y + SeriesElement::Integer(ctx, i);
  }
  const SeriesElement deriv = SeriesElement::Integer(ctx, step) *
                              (step > 1 ? IntPow(x, step - 1)
                                        : SeriesElement::One(ctx)) *
                              inner;

  ResidualReport rep;
  rep.precision = r;
  rep.derivative_valuation = Valuation(deriv);
  const Exponent threshold = r + rep.derivative_valuation;

  // Reducing sigma powers costs about one unit above the lowest such term.
  // Unrolling first pushes those terms up, so deepen until the bound clears.
  SeriesElement reduced = ReduceSigmaPowers(value);
  for (int extra = 1; extra <= kMaxUnroll && value.sigma_index() > 0 &&
                      *reduced.precision() < threshold;
       ++extra) {
    reduced = ReduceSigmaPowers(
        SigmaRewrite(value, value.sigma_index() + extra));
  }
  if (reduced.empty()) {
    rep.value_below_bound = false;
    rep.value_valuation = *reduced.precision();
  } else {
    rep.value_valuation = Valuation(reduced);
  }
  rep.passed = rep.value_valuation >= r + rep.derivative_valuation;
  return rep;
}

ResidualReport ResidualCheck(const ZetaExpansion& z) {
  return ResidualCheck(z.element, z.n, *z.element.precision());
}

std::vector<CanonicalDigit> GreedyRootDigits(const ContextPtr& ctx, int n,
                                             const Exponent& window_end) {
  RequireLevel(n, 2);
  const PrimeContext& c = *ctx;
  const Exponent acc = LevelUnit(c, n - 2);
  if (window_end >= acc) {
    throw Error(ErrorCode::kWindowBeyondAccumulation,
                "window " + window_end.ToString() +
                    " reaches the accumulation point " + acc.ToString());
  }
  const Exponent work = Exponent(PowInt(c.p(), n - 1)) * window_end + 2;
  const PolyOverK phi = CyclotomicPoly(ctx, n);

  Fp2 pinned = c.generator_2p2();
  if (n % 2 == 1) pinned = c.fp_sub(Fp2{}, pinned);

  std::vector<CanonicalDigit> digits{{Exponent(0), Fp2{1, 0}}};
  SeriesElement e = SeriesElement::One(ctx);
  while (true) {
    const PolyOverK g = TaylorShift(phi, Truncate(e, work));
    const SeriesElement g0 = g.coeff(0);
    if (g0.empty()) break;
    const Leading l0 = LeadingTerm(g0);

    std::optional<Exponent> slope;
    std::vector<std::pair<int, Fp2>> segment{{0, l0.residue}};
    for (int i = 1; i <= g.degree(); ++i) {
      if (g.coeffs()[i].empty()) continue;
      const Leading li = LeadingTerm(g.coeffs()[i]);
      const Exponent s = (l0.valuation - li.valuation) / Exponent(i);
      if (!slope || s > *slope) {
        slope = s;
        segment.resize(1);
      }
      if (s == *slope) segment.emplace_back(i, li.residue);
    }
    if (!slope || *slope >= window_end) break;
    if (*slope <= digits.back().exp) {
      throw Error(ErrorCode::kPrecisionExhausted,
                  "Newton step did not advance past " +
                      digits.back().exp.ToString());
    }

    std::vector<Fp2> roots;
    for (std::int64_t a = 0; a < c.p(); ++a) {
      for (std::int64_t b = 0; b < c.p(); ++b) {
        const Fp2 x{a, b};
        if (x.is_zero()) continue;
        Fp2 sum;
        for (const auto& [i, rho] : segment) {
          sum = c.fp_add(sum, c.fp_mul(rho, c.fp_pow(x, i)));
        }
        if (sum.is_zero()) roots.push_back(x);
      }
    }
    Fp2 digit;
    if (digits.size() == 1) {
      if (std::find(roots.begin(), roots.end(), pinned) == roots.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "pinned branch is not a residual root");
      }
      digit = pinned;
    } else if (roots.size() == 1) {
      digit = roots.front();
    } else {
      throw Error(ErrorCode::kAmbiguousLeading,
                  "residual polynomial at " + slope->ToString() + " has " +
                      std::to_string(roots.size()) + " roots");
    }
    digits.push_back({*slope, digit});
    e = e + SeriesElement::Monomial(
                ctx, c.to_exact(Teichmueller(c, digit, c.max_digits())),
                *slope);
  }
  return digits;
}

SeriesElement BuildInversePower(const ContextPtr& ctx, int n) {
  RequireLevel(n, 2);
  const std::int64_t p = ctx->p();
  const Exponent target =
      Exponent(-2, PowInt(p, n)) + 2 * LevelUnit(*ctx, n);
  const ZetaExpansion z = BuildZeta(ctx, n + 1);
  return IntPow(z.element - SeriesElement::One(ctx), -(2 * p - 2), target);
}

IdentityCheck CheckInversePower(const ContextPtr& ctx, int n) {
  const std::int64_t p = ctx->p();
  const Exponent e = LevelUnit(*ctx, n);
  const Exponent base(-2, PowInt(p, n));
  const Exponent target = base + 2 * e;
  SeriesElement rhs = ZetaMonomial(ctx, 1, 0, base) -
                      ZetaMonomial(ctx, Sign(n), 1, base + e);
  if (p == 3) {
    rhs = rhs - ZetaMonomial(ctx, 1, 0, base + Exponent(1, PowInt(3, n)), n + 1,
                             1);
  }
  return Compare("inverse_power", BuildInversePower(ctx, n), rhs, target);
}

ABetaElement BuildABeta(const ContextPtr& ctx, int n, const mpq_class& beta) {
  RequireLevel(n, 2);
  if (beta != 0 && RationalValuation(beta, ctx->p()) < 0) {
    throw Error(ErrorCode::kDenominatorDivisibleByP,
                "beta must be p-integral, got " + beta.get_str());
  }
  const Exponent a = LevelUnit(*ctx, n - 1);
  SeriesElement x = ZetaMonomial(ctx, Sign(n), 1, a, n, 1) +
                    ZetaMonomial(ctx, beta, 2, 2 * a, n, 1);
  return ABetaElement{n, beta, Truncate(x, 2 * a)};
}

SeriesElement ABetaPower(const ABetaElement& a, int k) {
  return IntPow(a.element, k);
}

IdentityCheck CheckABetaPower(const ContextPtr& ctx, int n,
                              const mpq_class& beta, int k) {
  const std::int64_t p = ctx->p();
  if (k < 1 || k > 2 * p - 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "power must lie in 1..2p-1, got " + std::to_string(k));
  }
  const ABetaElement a = BuildABeta(ctx, n, beta);
  const Exponent e = LevelUnit(*ctx, n);
  const Exponent r = 2 * LevelUnit(*ctx, n - 1);
  const int s = Sign(static_cast<long>(n) * k);

  SeriesElement rhs = ZetaMonomial(ctx, s, k, k * e);
  if (k <= p + 1) {
    rhs = rhs + ZetaMonomial(ctx, k * s, k, (k + p - 1) * e, n + 1, 1);
  }
  if (k == 2) rhs = rhs + ZetaMonomial(ctx, 1, 2, r, n + 1, 2);
  if (k == 3) {
    rhs = rhs + ZetaMonomial(ctx, 3 * Sign(n), 3,
                             Exponent(2 * p * p - p + 2,
                                      PowInt(p, n + 1) * (p - 1)));
  }
  if (k <= p - 1) {
    rhs = rhs + ZetaMonomial(ctx, beta * k * Sign(n * (k + 1)), k + 1,
                             (k + p) * e);
  }
  if (k == 1) rhs = rhs + ZetaMonomial(ctx, beta, 2, r, n + 1, 1);
  return Compare("a_beta_power", ABetaPower(a, k), rhs, r);
}

namespace {

SeriesElement PartialSum(const ABetaElement& a, int terms_from, int terms_to,
                         const std::function<mpq_class(int)>& coeff,
                         int power_offset) {
  const ContextPtr& ctx = a.element.context();
  SeriesElement sum = SeriesElement::Zero(ctx);
  for (int k = terms_from; k <= terms_to; ++k) {
    const mpq_class c = coeff(k);
    if (c == 0) continue;
    sum = sum + ScaleRational(ABetaPower(a, k + power_offset), c);
  }
  return sum;
}

mpq_class ExpCoeff(int k) { return Sign(k) * InvFactorial(k); }

}  // namespace

IdentityCheck CheckPartialSum(const ContextPtr& ctx, int n,
                              const mpq_class& beta) {
  const std::int64_t p = ctx->p();
  const ABetaElement a = BuildABeta(ctx, n, beta);
  const ZetaExpansion z = BuildZeta(ctx, n + 1);
  const Exponent e = LevelUnit(*ctx, n);
  const Exponent r = 2 * LevelUnit(*ctx, n - 1);

  const SeriesElement lhs =
      z.element - PartialSum(a, 0, static_cast<int>(p - 1), ExpCoeff, 0);

  SeriesElement rhs = ZetaMonomial(ctx, Sign(n + 1), 1, (2 * p - 1) * e, n + 1, 1);
  for (int k = 1; k < p; ++k) {
    const mpq_class c = Sign(k) * (k * beta - Harmonic(k)) * InvFactorial(k) *
                        Sign(static_cast<long>(n) * k + n + 1);
    rhs = rhs + ZetaMonomial(ctx, c, k + 1, (k + p) * e);
  }
  rhs = rhs + ZetaMonomial(ctx, beta, 2, r, n + 1, 1);
  if (p == 3) {
    rhs = rhs - ZetaMonomial(ctx, mpq_class(Sign(n), 2), 3,
                             Exponent(2 * p * p - p + 2,
                                      PowInt(p, n + 1) * (p - 1)));
  }
  return Compare("partial_sum", lhs, rhs, r);
}

SeriesElement ProductPipeline(const ContextPtr& ctx, int n,
                              const mpq_class& beta) {
  const std::int64_t p = ctx->p();
  const ABetaElement a = BuildABeta(ctx, n, beta);
  const ZetaExpansion z = BuildZeta(ctx, n + 1);
  const SeriesElement head =
      PartialSum(a, 0, static_cast<int>(p - 1), ExpCoeff, 0);
  const SeriesElement tail = PartialSum(
      a, 1, static_cast<int>(p - 1),
      [&beta](int k) -> mpq_class {
        return Sign(k) * (k * beta - Harmonic(k)) * InvFactorial(k);
      },
      static_cast<int>(p));
  const SeriesElement diff = z.element - head - tail;
  return Truncate(BuildInversePower(ctx, n) * diff, 2 * LevelUnit(*ctx, n));
}

IdentityCheck CheckProduct(const ContextPtr& ctx, int n, const mpq_class& beta) {
  const Exponent e = LevelUnit(*ctx, n);
  const SeriesElement rhs = ZetaMonomial(ctx, Sign(n + 1), 1, e, n + 1, 1) +
                            ZetaMonomial(ctx, 2, 2, 2 * e, n + 1, 1);
  return Compare("product", ProductPipeline(ctx, n, beta), rhs, 2 * e);
}

IdentityCheck CheckTowerCompatibility(const ContextPtr& ctx, int n) {
  const ZetaExpansion upper = BuildZeta(ctx, n + 1);
  const ZetaExpansion lower = BuildZeta(ctx, n);
  return Compare("tower_compatibility", IntPow(upper.element, ctx->p()),
                 lower.element, 2 * LevelUnit(*ctx, n - 1));
}

}  // namespace tatetower
