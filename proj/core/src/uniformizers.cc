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

#include "tatetower/uniformizers.h"

#include <string>
#include <utility>

#include "tatetower/cyclotomic.h"
#include "tatetower/error.h"

namespace tatetower {
namespace {

int Sign(int e) { return e % 2 == 0 ? 1 : -1; }

std::int64_t PowInt(std::int64_t p, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace

SeriesElement TwoTermForm(const ContextPtr& ctx, int m) {
  const Exponent a = LevelUnit(*ctx, m - 1);
  const int second = m == 2 ? 1 : 2;
  return ZetaMonomial(ctx, Sign(m), 1, a, m, 1) +
         ZetaMonomial(ctx, second, 2, 2 * a, m, 1);
}

void CompleteCertificate(UniformizerCertificate& c) {
  c.claimed_valuation = TowerUnit(*c.ctx, c.m, c.n);
  c.valuation = Valuation(c.element);
  c.verified = c.valuation == c.claimed_valuation;
  const Exponent r = 2 * LevelUnit(*c.ctx, c.m - 1);
  c.expansion_matches =
      c.n == 1 && *c.element.precision() >= r &&
      EqualMod(Truncate(c.element, r), Truncate(TwoTermForm(c.ctx, c.m), r), r);
}

RecurrencePolynomial MakeRecurrencePoly(const ContextPtr& ctx,
                                        const std::string& label) {
  int c = 0;
  if (label == kRecurrenceFirst) {
    c = 1;
  } else if (label == kRecurrenceStable || label == ">=4,1") {
    c = 2;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown recurrence label '" + label + "'");
  }
  const int p = static_cast<int>(ctx->p());
  RecurrencePolynomial r{ctx, c == 1 ? kRecurrenceFirst : kRecurrenceStable,
                         std::vector<mpq_class>(2 * p, 0)};
  for (int k = 0; k < p; ++k) {
    r.coefficients[k] = mpq_class(Sign(k), Factorial(k));
  }
  for (int k = 1; k < p; ++k) {
    mpq_class v = Sign(k) * (c * k - Harmonic(k));
    v /= Factorial(k);
    r.coefficients[p + k] = v;
  }
  while (r.coefficients.size() > 1 && r.coefficients.back() == 0) {
    r.coefficients.pop_back();
  }
  return r;
}

SeriesElement EvaluateRecurrence(const RecurrencePolynomial& r,
                                 const SeriesElement& x) {
  const ContextPtr& ctx = x.context();
  SeriesElement acc = SeriesElement::Rational(ctx, r.coefficients.back());
  for (std::size_t i = r.coefficients.size() - 1; i-- > 0;) {
    acc = acc * x;
    if (r.coefficients[i] != 0) {
      acc = acc + SeriesElement::Rational(ctx, r.coefficients[i]);
    }
  }
  return acc;
}

Exponent TowerUnit(const PrimeContext& ctx, int m, int n) {
  return Exponent(1, PowInt(ctx.p(), m + n - 1) * (ctx.p() - 1));
}

UniformizerCertificate BuildPi21(const ContextPtr& ctx) {
  const PrimeContext& c = *ctx;
  const std::int64_t p = c.p();
  const ZetaExpansion z = BuildZeta(ctx, 2);
  SeriesElement sum = SeriesElement::Zero(ctx);
  for (int k = 0; k < p; ++k) {
    const mpz_class f = Factorial(k) % mpz_class(p);
    const UnramifiedCoeff t =
        Teichmueller(c, c.fp_from_int(f.get_si()), c.max_digits());
    const UnramifiedCoeff coeff =
        c.mul(c.inverse(t, c.max_digits()), c.pow(c.zeta_2p2(), k));
    sum = sum + SeriesElement::Monomial(ctx, coeff, Exponent(k, p * (p - 1)));
  }
  const SeriesElement head =
      SeriesElement::Monomial(ctx, UnramifiedCoeff::Exact(1), Exponent(-1, p));
  UniformizerCertificate cert;
  cert.ctx = ctx;
  cert.m = 2;
  cert.element = head * (z.element - sum);
  CompleteCertificate(cert);
  return cert;
}

TowerLevel StepTower(const ContextPtr& ctx, int m,
                     const SeriesElement& previous,
                     const RecurrencePolynomial& r) {
  if (m < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "recursion starts at m = 3, got " + std::to_string(m));
  }
  const ZetaExpansion z = BuildZeta(ctx, m);
  const SeriesElement rp = EvaluateRecurrence(r, previous);
  if (*rp.precision() < *z.element.precision()) {
    throw Error(ErrorCode::kPrecisionExhausted,
                "R(pi) known to " + rp.precision()->ToString() +
                    ", level needs " + z.element.precision()->ToString());
  }
  const SeriesElement diff = z.element - rp;
  if (diff.empty()) {
    throw Error(ErrorCode::kPrecisionExhausted,
                "zeta - R(pi) vanishes to " + diff.precision()->ToString());
  }
  TowerLevel level;
  level.intermediate_valuation = Valuation(diff);
  UniformizerCertificate& cert = level.certificate;
  cert.ctx = ctx;
  cert.m = m;
  cert.element = BuildInversePower(ctx, m - 1) * diff;
  if (cert.element.empty()) {
    throw Error(ErrorCode::kPrecisionExhausted,
                "level " + std::to_string(m) + " has no term below " +
                    cert.element.precision()->ToString());
  }
  CompleteCertificate(cert);
  return level;
}

std::vector<TowerLevel> BuildTower(const ContextPtr& ctx, int m_max) {
  std::vector<TowerLevel> levels;
  levels.push_back(TowerLevel{BuildPi21(ctx), Exponent(0)});
  const RecurrencePolynomial first = MakeRecurrencePoly(ctx, kRecurrenceFirst);
  const RecurrencePolynomial stable =
      MakeRecurrencePoly(ctx, kRecurrenceStable);
  for (int m = 3; m <= m_max; ++m) {
    levels.push_back(StepTower(ctx, m, levels.back().certificate.element,
                               m == 3 ? first : stable));
  }
  return levels;
}

UniformizerCertificate BuildPiM1(const ContextPtr& ctx, int m) {
  if (m < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "tower starts at m = 2, got " + std::to_string(m));
  }
  return BuildTower(ctx, m).back().certificate;
}

Exponent IntermediateValuation(const ContextPtr& ctx, int m) {
  if (m < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "intermediate valuation needs m >= 3, got " +
                    std::to_string(m));
  }
  return BuildTower(ctx, m).back().intermediate_valuation;
}

StabilityReport StabilityProbe(const ContextPtr& ctx, int m_max) {
  if (m_max < 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "stability probe needs m_max >= 4, got " +
                    std::to_string(m_max));
  }
  const std::int64_t p = ctx->p();
  const std::vector<TowerLevel> levels = BuildTower(ctx, m_max);
  StabilityReport report;
  report.passed = true;
  for (const TowerLevel& l : levels) {
    if (l.certificate.m < 4) continue;
    StabilityLevel s;
    s.m = l.certificate.m;
    s.observed = l.intermediate_valuation;
    s.expected = Exponent(2 * p * p - 2 * p + 1) * TowerUnit(*ctx, s.m, 1);
    s.passed = s.observed == s.expected;
    report.passed = report.passed && s.passed;
    report.levels.push_back(s);
  }
  return report;
}

Json CertificateToJson(const UniformizerCertificate& c) {
  Json j;
  j["p"] = c.ctx->p();
  j["m"] = c.m;
  j["n"] = c.n;
  j["valuation"] = ExponentToJson(c.valuation);
  j["verified"] = c.verified;
  j["element"] = SeriesToJson(c.element);
  return j;
}

}  // namespace tatetower
