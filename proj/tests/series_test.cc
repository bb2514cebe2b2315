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

#include <gtest/gtest.h>

#include <random>

#include "tatetower/error.h"

namespace tatetower {
namespace {

class SeriesTest : public ::testing::Test {
 protected:
  ContextPtr p3_ = PrimeContext::Create(3);
  ContextPtr p5_ = PrimeContext::Create(5);

  SeriesElement Mono(const ContextPtr& ctx, std::int64_t c, Exponent x,
                     Precision r = {}) {
    return SeriesElement::Monomial(ctx, UnramifiedCoeff::Exact(c), x, r);
  }
  SeriesElement Int(const ContextPtr& ctx, std::int64_t n, Precision r = {}) {
    return SeriesElement::Integer(ctx, n, r);
  }
  static void ExpectCode(ErrorCode code, const std::function<void()>& f) {
    try {
      f();
      ADD_FAILURE() << "expected " << ErrorCodeName(code);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
  }
};

TEST_F(SeriesTest, NormalFormPullsPFactors) {
  // 3 * 3^{1/2} = 3^{3/2}
  const SeriesElement e = Mono(p3_, 3, Exponent(1, 2));
  ASSERT_EQ(e.terms().size(), 1u);
  EXPECT_EQ(e.terms()[0].exp, Exponent(3, 2));
  EXPECT_EQ(e.terms()[0].coeff, UnramifiedCoeff::Exact(1));
}

TEST_F(SeriesTest, SigmaRewriteUnrolls) {
  const SeriesElement s2 = SeriesElement::Sigma(p3_, 2);
  const SeriesElement r3 = SigmaRewrite(s2, 3);
  EXPECT_EQ(r3.sigma_index(), 3);
  ASSERT_EQ(r3.terms().size(), 2u);
  EXPECT_EQ(r3.terms()[0].exp, Exponent(-1, 9));
  EXPECT_EQ(r3.terms()[0].sigma_pow, 0);
  EXPECT_EQ(r3.terms()[1].sigma_pow, 1);

  EXPECT_EQ(SigmaRewrite(s2, 4).terms().size(), 3u);

  const SeriesElement sq = Truncate(s2 * s2, 0);
  const SeriesElement sq3 = SigmaRewrite(sq, 3);
  // 3^{-2/9} + 2 * 3^{-1/9} sigma_3 + sigma_3^2
  ASSERT_EQ(sq3.terms().size(), 3u);
  EXPECT_EQ(sq3.terms()[0].exp, Exponent(-2, 9));
  EXPECT_EQ(sq3.terms()[1].exp, Exponent(-1, 9));
  EXPECT_EQ(sq3.terms()[1].sigma_pow, 1);
  EXPECT_EQ(sq3.ctx().residue(sq3.terms()[1].coeff), (Fp2{2, 0}));
  EXPECT_EQ(sq3.terms()[2].sigma_pow, 2);
}

TEST_F(SeriesTest, AddCancelsAndTakesMinPrecision) {
  const SeriesElement a = Mono(p3_, 1, Exponent(1, 2), Exponent(2));
  const SeriesElement b =
      Mono(p3_, -1, Exponent(1, 2)) + Mono(p3_, 1, 1, Exponent(3, 2));
  const SeriesElement s = a + Truncate(b, Exponent(3, 2));
  ASSERT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s.terms()[0].exp, Exponent(1));
  EXPECT_EQ(*s.precision(), Exponent(3, 2));

  const SeriesElement s2 = SeriesElement::Sigma(p3_, 2);
  const SeriesElement z =
      s2 + (-Mono(p3_, 1, Exponent(-1, 9)) - SeriesElement::Sigma(p3_, 3));
  EXPECT_TRUE(z.is_exact_zero());
}

TEST_F(SeriesTest, MulExamples) {
  const SeriesElement m = Mono(p3_, 1, Exponent(1, 2)) * Mono(p3_, 1, Exponent(1, 3));
  ASSERT_EQ(m.terms().size(), 1u);
  EXPECT_EQ(m.terms()[0].exp, Exponent(5, 6));

  const SeriesElement d = (Int(p5_, 1) + Mono(p5_, 1, 1)) * (Int(p5_, 1) - Mono(p5_, 1, 1));
  EXPECT_TRUE(EqualMod(d, Int(p5_, 1) - Mono(p5_, 1, 2), 100));

  const SeriesElement s = SeriesElement::Sigma(p3_, 2);
  const SeriesElement sq = s * s;
  ASSERT_EQ(sq.terms().size(), 1u);
  EXPECT_EQ(sq.terms()[0].sigma_pow, 2);
  EXPECT_EQ(Valuation(sq), Exponent(-2, 9));
}

TEST_F(SeriesTest, MulPrecisionRule) {
  const SeriesElement a = Mono(p3_, 1, Exponent(1, 3), Exponent(2));
  const SeriesElement b = Mono(p3_, 1, Exponent(1, 2), Exponent(3));
  // min(2 + 1/2, 3 + 1/3)
  EXPECT_EQ(*(a * b).precision(), Exponent(5, 2));
}

TEST_F(SeriesTest, Valuations) {
  for (int n : {1, 2, 3}) {
    EXPECT_EQ(Valuation(SeriesElement::Sigma(p5_, n)),
              -Exponent(1, n == 1 ? 5 : n == 2 ? 25 : 125));
  }
  const SeriesElement s = SeriesElement::Sigma(p3_, 2);
  EXPECT_EQ(Valuation(Mono(p3_, 1, Exponent(2, 3)) * s * s), Exponent(4, 9));
  ExpectCode(ErrorCode::kPrecisionLoss,
             [&] { Valuation(SeriesElement::Zero(p3_, Exponent(5))); });
  // sigma_2 - 3^{-1/9}: tie at -1/9 resolved to sigma_3's leading term.
  EXPECT_EQ(Valuation(s - Mono(p3_, 1, Exponent(-1, 9))), Exponent(-1, 27));
}

TEST_F(SeriesTest, InvertExamples) {
  const SeriesElement inv = Invert(Int(p3_, 1) - Mono(p3_, 1, 1), Exponent(3));
  EXPECT_TRUE(EqualMod(inv, Int(p3_, 1) + Mono(p3_, 1, 1) + Mono(p3_, 1, 2), 3));
  EXPECT_EQ(*inv.precision(), Exponent(3));

  const SeriesElement h = Invert(Mono(p3_, 1, Exponent(1, 2)), Exponent(2));
  ASSERT_EQ(h.terms().size(), 1u);
  EXPECT_EQ(h.terms()[0].exp, Exponent(-1, 2));
  EXPECT_EQ(*h.precision(), Exponent(2));

  const SeriesElement x = Int(p3_, 1, Exponent(4)) + Mono(p3_, 1, 1);
  const SeriesElement back = Invert(Invert(x));
  EXPECT_TRUE(EqualMod(back, x, 4));

  ExpectCode(ErrorCode::kPrecisionLoss,
             [&] { Invert(Int(p3_, 1) + Mono(p3_, 1, 1)); });
  ExpectCode(ErrorCode::kPrecisionLoss, [&] { Invert(x, Exponent(5)); });
}

TEST_F(SeriesTest, InvertWithSigmaLeadingTerm) {
  // sigma_2 + 1 at p=3, inverted to relative precision 1.
  const SeriesElement s = SeriesElement::Sigma(p3_, 2) + Int(p3_, 1);
  const Exponent target = Exponent(1) + Exponent(1, 9);
  const SeriesElement inv = Invert(s, target);
  EXPECT_TRUE(EqualMod(inv * s, Int(p3_, 1), 1));
}

TEST_F(SeriesTest, IntPow) {
  const SeriesElement x = Int(p3_, 1) + Mono(p3_, 1, 1);
  EXPECT_TRUE(EqualMod(IntPow(x, 2),
                       Int(p3_, 1) + Mono(p3_, 2, 1) + Mono(p3_, 1, 2), 50));
  EXPECT_TRUE(EqualMod(IntPow(x, 0), Int(p3_, 1), 50));
  const SeriesElement y = Int(p5_, 2, Exponent(6)) + Mono(p5_, 1, Exponent(1, 3));
  const SeriesElement inv3 = IntPow(y, -3, Exponent(4));
  EXPECT_TRUE(EqualMod(inv3 * IntPow(y, 3), Int(p5_, 1), 4));
}

TEST_F(SeriesTest, EqualModExamples) {
  const SeriesElement x = Int(p3_, 2, Exponent(3)) + Mono(p3_, 1, Exponent(1, 2));
  EXPECT_TRUE(EqualMod(x, x, 3));
  EXPECT_TRUE(EqualMod(SeriesElement::Sigma(p3_, 2),
                       Mono(p3_, 1, Exponent(-1, 9)) + SeriesElement::Sigma(p3_, 3),
                       100));
  const SeriesElement one = Int(p3_, 1);
  const SeriesElement other = one + Mono(p3_, 1, 5);
  EXPECT_TRUE(EqualMod(one, other, 4));
  EXPECT_FALSE(EqualMod(one, other, 6));
  ExpectCode(ErrorCode::kPrecisionLoss, [&] { EqualMod(x, x, 4); });
}

TEST_F(SeriesTest, CanonicalDigitsExamples) {
  const SeriesElement a = (Int(p3_, 1) + Mono(p3_, 1, 1)) * Mono(p3_, 1, Exponent(1, 2));
  const auto da = CanonicalDigits(a, 2);
  ASSERT_EQ(da.size(), 2u);
  EXPECT_EQ(da[0], (CanonicalDigit{Exponent(1, 2), {1, 0}}));
  EXPECT_EQ(da[1], (CanonicalDigit{Exponent(3, 2), {1, 0}}));

  // 5 at p=3: re-sum the digits as Teichmuller lifts modulo 27.
  const auto d5 = CanonicalDigits(Int(p3_, 5), 3);
  UnramifiedCoeff sum = p3_->coeff(0, 0, 3);
  for (const CanonicalDigit& d : d5) {
    ASSERT_TRUE(d.exp.is_integer());
    sum = p3_->add(sum, p3_->mul(Teichmueller(*p3_, d.digit, 3),
                                 p3_->coeff(p3_->pow_p(d.exp.num()), 0, 3)));
  }
  EXPECT_EQ(sum, p3_->coeff(5, 0, 3));

  const auto ds = CanonicalDigits(SeriesElement::Sigma(p3_, 2), Exponent(-1, 100));
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds[0].exp, Exponent(-1, 9));
  EXPECT_EQ(ds[1].exp, Exponent(-1, 27));
  EXPECT_EQ(ds[2].exp, Exponent(-1, 81));

  ExpectCode(ErrorCode::kWindowBeyondAccumulation,
             [&] { CanonicalDigits(SeriesElement::Sigma(p3_, 2), 0); });
  ExpectCode(ErrorCode::kPrecisionLoss,
             [&] { CanonicalDigits(Int(p3_, 1, Exponent(1)), 2); });
}

TEST_F(SeriesTest, CanonicalDigitsOfSigmaSquareCountMultiplicity) {
  // sigma_1^2 at p=3 below -1/3: 3^{-2/3} + 2*3^{-4/9} has digit [2] at -4/9.
  const SeriesElement s = SeriesElement::Sigma(p3_, 1);
  const auto d = CanonicalDigits(s * s, Exponent(-1, 3) + Exponent(-1, 27));
  ASSERT_GE(d.size(), 2u);
  EXPECT_EQ(d[0], (CanonicalDigit{Exponent(-2, 3), {1, 0}}));
  EXPECT_EQ(d[1], (CanonicalDigit{Exponent(-4, 9), {2, 0}}));
}

TEST_F(SeriesTest, RandomRingAxiomsAndSigmaRewrite) {
  std::mt19937_64 rng(5);
  auto random_element = [&](const ContextPtr& ctx) {
    std::vector<Term> terms;
    std::uniform_int_distribution<int> num(0, 12), pw(0, 2), c(1, 40);
    for (int i = 0; i < 4; ++i) {
      terms.push_back(Term{ctx->coeff(c(rng), c(rng), 10),
                           Exponent(num(rng), 6), pw(rng)});
    }
    return SeriesElement::FromTerms(ctx, 2, std::move(terms), Exponent(3));
  };
  for (int i = 0; i < 20; ++i) {
    const SeriesElement a = random_element(p3_);
    const SeriesElement b = random_element(p3_);
    const SeriesElement c = random_element(p3_);
    const SeriesElement lhs = a * (b + c);
    const SeriesElement rhs = a * b + a * c;
    const Exponent r = std::min(*lhs.precision(), *rhs.precision());
    EXPECT_TRUE(EqualMod(lhs, rhs, r));
    EXPECT_TRUE(EqualMod(SigmaRewrite(a, 4), a, *a.precision()));
    try {
      EXPECT_EQ(Valuation(a * b), Valuation(a) + Valuation(b));
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kAmbiguousLeading ||
                  e.code() == ErrorCode::kPrecisionLoss);
    }
  }
}

}  // namespace
}  // namespace tatetower
