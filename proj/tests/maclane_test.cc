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

#include <gtest/gtest.h>

#include <random>

#include "tatetower/error.h"

namespace tatetower {
namespace {

class MacLaneTest : public ::testing::Test {
 protected:
  ContextPtr p3_ = PrimeContext::Create(3);
  ContextPtr p5_ = PrimeContext::Create(5);

  static SeriesElement Mono(const ContextPtr& ctx, std::int64_t c,
                            const Exponent& x) {
    return SeriesElement::Monomial(ctx, UnramifiedCoeff::Exact(c), x);
  }
  static SeriesElement Int(const ContextPtr& ctx, std::int64_t c) {
    return SeriesElement::Integer(ctx, c);
  }
  static PolyOverK Poly(const ContextPtr& ctx, std::vector<SeriesElement> c) {
    return PolyOverK(ctx, std::move(c));
  }
  static PolyOverK IntPoly(const ContextPtr& ctx,
                           const std::vector<std::int64_t>& c) {
    std::vector<SeriesElement> s;
    for (std::int64_t x : c) s.push_back(Int(ctx, x));
    return PolyOverK(ctx, std::move(s));
  }

  // -1/2 + (1/2) [zeta_4] 3^{1/2}, a primitive cube root of unity at p = 3.
  SeriesElement Zeta3() const {
    return ZetaMonomial(p3_, mpq_class(-1, 2), 0, Exponent(0)) +
           ZetaMonomial(p3_, mpq_class(1, 2), 1, Exponent(1, 2));
  }
  // T^3 - zeta_3
  PolyOverK CubeMinusZeta3() const {
    return Sub(PolyOverK::MonomialT(p3_, 3), PolyOverK::Constant(Zeta3()));
  }

  static InductiveValuation Gauss(const ContextPtr& ctx) {
    return InductiveValuation(ctx, ValueGroup{1});
  }

  static Exponent Val(const InductiveValuation& v, const PolyOverK& f) {
    const Value x = EvalValuation(v, f);
    EXPECT_TRUE(x.has_value());
    return x.value_or(Exponent(0));
  }

  // Degree <= 3 with coefficients c p^{j/6}, c in [-9, 9].
  static PolyOverK RandomPoly(const ContextPtr& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> ex(0, 6);
    const int d = deg(rng);
    std::vector<SeriesElement> c;
    for (int i = 0; i <= d; ++i) {
      int k = coef(rng);
      if (i == d && k == 0) k = 1;
      c.push_back(Mono(ctx, k, Exponent(ex(rng), 6)));
    }
    return PolyOverK(ctx, std::move(c));
  }

  // Chains of length 0..3 over the prime p.
  std::vector<InductiveValuation> Chains(const ContextPtr& ctx) const {
    const SeriesElement c1 = Int(ctx, 1);
    const SeriesElement c2 = c1 + Mono(ctx, 1, Exponent(1, 2));
    const SeriesElement c3 = c2 + Mono(ctx, 1, Exponent(1));
    const InductiveValuation g = Gauss(ctx);
    const InductiveValuation a =
        g.Augment(PolyOverK::Linear(c1), KeyValue::Rational(Exponent(1, 2)));
    const InductiveValuation b =
        a.Augment(PolyOverK::Linear(c2), KeyValue::Rational(Exponent(1)));
    const InductiveValuation c =
        b.Augment(PolyOverK::Linear(c3), KeyValue::Rational(Exponent(3, 2)));
    return {g, a, b, c};
  }
};

TEST_F(MacLaneTest, GaussValuation) {
  const PolyOverK f = Poly(p3_, {SeriesElement::Rational(p3_, mpq_class(1, 3)),
                                 Int(p3_, 9), Int(p3_, 3)});
  EXPECT_EQ(GaussVal(f), Value(Exponent(-1)));
  EXPECT_EQ(GaussVal(IntPoly(p3_, {-1, 1})), Value(Exponent(0)));
  EXPECT_EQ(GaussVal(PolyOverK::Constant(Mono(p3_, 1, Exponent(5, 2)))),
            Value(Exponent(5, 2)));
  EXPECT_EQ(GaussVal(PolyOverK()), Value());
}

TEST_F(MacLaneTest, GaussValuationNeedsVisibleCoefficients) {
  const PolyOverK f =
      Poly(p3_, {SeriesElement::Zero(p3_, Exponent(1)), Int(p3_, 9), Int(p3_, 1)});
  try {
    GaussVal(Poly(p3_, {SeriesElement::Zero(p3_, Exponent(0)), Int(p3_, 3)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecisionLoss);
  }
  EXPECT_EQ(GaussVal(f), Value(Exponent(0)));
}

TEST_F(MacLaneTest, PhiAdicExpansion) {
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  const std::vector<PolyOverK> a = PhiAdicExpansion(IntPoly(p3_, {1, 0, 1}), phi);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_TRUE(Sub(a[0], IntPoly(p3_, {2})).is_zero());
  EXPECT_TRUE(Sub(a[1], IntPoly(p3_, {2})).is_zero());
  EXPECT_TRUE(Sub(a[2], IntPoly(p3_, {1})).is_zero());

  const std::vector<PolyOverK> b = PhiAdicExpansion(phi, phi);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_TRUE(b[0].is_zero());
  EXPECT_TRUE(Sub(b[1], IntPoly(p3_, {1})).is_zero());
}

TEST_F(MacLaneTest, PhiAdicRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyOverK f = IntPoly(p5_, {coef(rng), coef(rng), coef(rng), 1});
    const PolyOverK phi = PolyOverK::Linear(Int(p5_, coef(rng)));
    const std::vector<PolyOverK> a = PhiAdicExpansion(f, phi);
    PolyOverK sum(p5_, {});
    PolyOverK power = IntPoly(p5_, {1});
    for (const PolyOverK& ai : a) {
      EXPECT_LT(ai.degree(), 1);
      sum = Add(sum, Mul(ai, power));
      power = Mul(power, phi);
    }
    EXPECT_TRUE(Sub(sum, f).is_zero()) << trial;
  }
}

TEST_F(MacLaneTest, EvalValuation) {
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  const InductiveValuation v =
      Gauss(p3_).Augment(phi, KeyValue::Rational(Exponent(1, 2)));
  // phi^2 + 3 phi + 9
  const PolyOverK f = Add(Add(Mul(phi, phi), Scale(phi, Int(p3_, 3))),
                          IntPoly(p3_, {9}));
  EXPECT_EQ(EvalValuation(v, f), Value(Exponent(1)));
  const InductiveValuation w = Gauss(p3_).Augment(phi, KeyValue::Infinite());
  EXPECT_EQ(EvalValuation(w, phi), Value());
  EXPECT_EQ(EvalValuation(w, IntPoly(p3_, {2, 1})), Value(Exponent(1)));
}

TEST_F(MacLaneTest, AugmentRejectsInvalidStages) {
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  const InductiveValuation v =
      Gauss(p3_).Augment(phi, KeyValue::Rational(Exponent(1, 2)));
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  // lambda not above the current value 1/2 of T - 1 - 3
  EXPECT_EQ(code([&] {
              v.Augment(IntPoly(p3_, {-4, 1}), KeyValue::Rational(Exponent(1, 3)));
            }),
            ErrorCode::kInvalidChain);
  // T - 4 ~ T - 1 under v
  EXPECT_EQ(code([&] {
              v.Augment(IntPoly(p3_, {-4, 1}), KeyValue::Rational(Exponent(2)));
            }),
            ErrorCode::kInvalidChain);
  EXPECT_EQ(code([&] {
              v.Augment(IntPoly(p3_, {-1, 2}), KeyValue::Rational(Exponent(2)));
            }),
            ErrorCode::kInvalidChain);
  const InductiveValuation w = Gauss(p3_).Augment(phi, KeyValue::Infinite());
  EXPECT_EQ(code([&] {
              w.Augment(IntPoly(p3_, {-1, 0, 1}), KeyValue::Rational(Exponent(5)));
            }),
            ErrorCode::kInvalidChain);
  const InductiveValuation deg2 =
      v.Augment(Sub(Mul(phi, phi), IntPoly(p3_, {3})),
                KeyValue::Rational(Exponent(3, 2)));
  EXPECT_EQ(code([&] {
              deg2.Augment(phi, KeyValue::Rational(Exponent(5)));
            }),
            ErrorCode::kInvalidChain);
}

TEST_F(MacLaneTest, Zeta3IsACubeRoot) {
  const SeriesElement z = Zeta3();
  EXPECT_TRUE(EqualMod(IntPow(z, 3), SeriesElement::One(p3_), Exponent(5)));
  EXPECT_EQ(Valuation(z - SeriesElement::One(p3_)), Exponent(1, 2));
}

TEST_F(MacLaneTest, EquivalenceToPowerOfKey) {
  const InductiveValuation g = Gauss(p3_);
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  const PolyOverK cube = Mul(Mul(phi, phi), phi);
  EXPECT_TRUE(IsEquiv(g, CubeMinusZeta3(), cube));
  EXPECT_EQ(EvalValuation(g, Sub(CubeMinusZeta3(), cube)), Value(Exponent(1, 2)));
  EXPECT_TRUE(IsEquiv(g, cube, cube));
  EXPECT_FALSE(IsEquiv(g, phi, PolyOverK::MonomialT(p3_, 1)));
}

// Expansion values at lambda = 1/6 tie between j = 0 and j = 3, so the
// initial form keeps a constant term and T - 1 does not divide it.
TEST_F(MacLaneTest, EquivDividesWithTiedConstantTerm) {
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  const InductiveValuation v =
      Gauss(p3_).Augment(phi, KeyValue::Rational(Exponent(1, 6)));
  EXPECT_FALSE(EquivDivides(v, phi, CubeMinusZeta3()));
  EXPECT_TRUE(EquivDivides(v, phi, Mul(phi, CubeMinusZeta3())));
  EXPECT_TRUE(EquivDivides(v, phi, phi));
  EXPECT_FALSE(EquivDivides(v, phi, IntPoly(p3_, {1})));
  // at lambda = 1/3 the phi^3 term wins alone
  const InductiveValuation w =
      Gauss(p3_).Augment(phi, KeyValue::Rational(Exponent(1, 3)));
  EXPECT_FALSE(EquivDivides(w, phi, CubeMinusZeta3()));
  const InductiveValuation u =
      Gauss(p3_).Augment(phi, KeyValue::Rational(Exponent(2, 3)));
  EXPECT_FALSE(EquivDivides(u, phi, CubeMinusZeta3()));
  const InductiveValuation s =
      Gauss(p3_).Augment(phi, KeyValue::Rational(Exponent(1, 9)));
  EXPECT_TRUE(EquivDivides(s, phi, CubeMinusZeta3()));
  try {
    EquivDivides(v, PolyOverK::MonomialT(p3_, 1), phi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDivisor);
  }
}

TEST_F(MacLaneTest, NewtonSetOfCyclotomicShift) {
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  const InductiveValuation v =
      Gauss(p3_).Augment(phi, KeyValue::Rational(Exponent(1, 6)));
  const std::vector<int> n = NewtonSet(v, CubeMinusZeta3());
  EXPECT_EQ(n, (std::vector<int>{0, 3}));
  EXPECT_EQ((n.back() - n.front()) * phi.degree(), 3);
  EXPECT_EQ(NewtonSet(v, phi), (std::vector<int>{1}));
  const std::vector<Value> vals{Exponent(1, 2), Exponent(1), Exponent(1),
                                Exponent(0)};
  EXPECT_EQ(NewtonSetFromValues(vals, Exponent(1, 6)), (std::vector<int>{0, 3}));
}

TEST_F(MacLaneTest, CollapseDropsEarlierEqualDegreeStage) {
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  const SeriesElement c = Int(p3_, 1) + Mono(p3_, 1, Exponent(1, 6));
  const PolyOverK psi = PolyOverK::Linear(c);
  const InductiveValuation v =
      Gauss(p3_)
          .Augment(phi, KeyValue::Rational(Exponent(1, 6)))
          .Augment(psi, KeyValue::Rational(Exponent(1, 3)));
  const InductiveValuation w = Collapse(v);
  ASSERT_EQ(w.stages().size(), 1u);
  EXPECT_TRUE(Sub(w.stages()[0].phi, psi).is_zero());
  EXPECT_EQ(w.stages()[0].lambda.value(), Exponent(1, 3));

  const InductiveValuation strict =
      Gauss(p3_)
          .Augment(phi, KeyValue::Rational(Exponent(1, 2)))
          .Augment(Sub(Mul(phi, phi), IntPoly(p3_, {3})),
                   KeyValue::Rational(Exponent(3, 2)));
  try {
    Collapse(strict);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCollapsible);
  }

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const PolyOverK f = RandomPoly(p3_, rng);
    EXPECT_EQ(EvalValuation(v, f), EvalValuation(w, f)) << i;
  }
}

TEST_F(MacLaneTest, Classify) {
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  EXPECT_EQ(Classify(Gauss(p3_).Augment(phi, KeyValue::Infinite())),
            PointType::kTypeI);
  EXPECT_EQ(Classify(Gauss(p3_).Augment(phi, KeyValue::Rational(Exponent(1, 2)))),
            PointType::kTypeII);
  const InductiveValuation t3 =
      Gauss(p3_).Augment(phi, KeyValue::Irrational("sqrt2"));
  EXPECT_EQ(Classify(t3), PointType::kTypeIII);
  EXPECT_EQ(Classify(Gauss(p3_)), PointType::kTypeII);
  EXPECT_EQ(PointTypeName(PointType::kTypeIII), "TypeIII");
  try {
    EvalValuation(t3, phi);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidChain);
  }
}

TEST_F(MacLaneTest, Seminorm) {
  const PolyOverK phi = IntPoly(p3_, {-1, 1});
  const Seminorm s = AsSeminorm(Gauss(p3_), IntPoly(p3_, {3, 3}));
  EXPECT_EQ(s.base, 3);
  EXPECT_EQ(s.exponent, std::optional<Exponent>(Exponent(-1)));
  EXPECT_TRUE(AsSeminorm(Gauss(p3_).Augment(phi, KeyValue::Infinite()), phi).is_zero());
}

TEST_F(MacLaneTest, PseudoValuationAxioms) {
  for (const ContextPtr& ctx : {p3_, p5_}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(ctx->p()));
    for (const InductiveValuation& v : Chains(ctx)) {
      for (int i = 0; i < 100; ++i) {
        const PolyOverK f = RandomPoly(ctx, rng);
        const PolyOverK g = RandomPoly(ctx, rng);
        const Exponent vf = Val(v, f);
        const Exponent vg = Val(v, g);
        EXPECT_EQ(Val(v, Mul(f, g)), vf + vg);
        const Value vs = EvalValuation(v, Add(f, g));
        if (vs) EXPECT_GE(*vs, std::min(vf, vg));
        const Seminorm nf = AsSeminorm(v, f);
        const Seminorm ng = AsSeminorm(v, g);
        EXPECT_EQ(*AsSeminorm(v, Mul(f, g)).exponent, *nf.exponent + *ng.exponent);
      }
    }
  }
}

TEST_F(MacLaneTest, AugmentationMonotone) {
  for (const ContextPtr& ctx : {p3_, p5_}) {
    const std::vector<InductiveValuation> chains = Chains(ctx);
    std::mt19937_64 rng(static_cast<std::uint64_t>(ctx->p()) * 31);
    for (std::size_t k = 1; k < chains.size(); ++k) {
      const InductiveValuation& v = chains[k - 1];
      const InductiveValuation& w = chains[k];
      const PolyOverK& phi = w.stages().back().phi;
      int equalities = 0;
      for (int i = 0; i < 100; ++i) {
        const PolyOverK f = RandomPoly(ctx, rng);
        const Exponent vf = Val(v, f);
        EXPECT_GE(Val(w, f), vf);
        // f ~_v a_0 with a_0 a nonzero constant, so phi does not v-divide f
        const PolyOverK a0 = PhiAdicExpansion(f, phi)[0];
        if (a0.is_zero()) continue;
        const Value rest = EvalValuation(v, Sub(f, a0));
        if (!rest || Val(v, a0) < *rest) {
          EXPECT_EQ(Val(w, f), vf);
          ++equalities;
        }
      }
      EXPECT_GT(equalities, 0);
    }
  }
}

TEST_F(MacLaneTest, Degree1ChainAtLevelOne) {
  struct Case {
    ContextPtr ctx;
    int m;
    std::int64_t d;
  };
  for (const Case& c : {Case{p3_, 3, 13}, Case{p3_, 4, 13}, Case{p5_, 3, 41},
                        Case{p5_, 4, 41}}) {
    const std::int64_t p = c.ctx->p();
    const SeriesElement base = BuildPiM1(c.ctx, c.m - 1).element;
    const Degree1Chain chain =
        RunDegree1Chain(c.ctx, c.m, 1, base, BuildZeta(c.ctx, c.m));
    EXPECT_EQ(chain.d, c.d);
    EXPECT_EQ(chain.d, 2 * p * p - 2 * p + 1);
    EXPECT_EQ(chain.stop_valuation, IntermediateValuation(c.ctx, c.m));
    ASSERT_FALSE(chain.digits.empty());
    EXPECT_EQ(chain.digits.front(), 1);
    const ValueGroup g{[&] {
      std::int64_t e = p - 1;
      for (int i = 0; i < c.m - 1; ++i) e *= p;
      return e;
    }()};
    EXPECT_FALSE(g.Contains(chain.stop_valuation));
    ASSERT_FALSE(chain.stages.empty());
    EXPECT_EQ(chain.stages.front().lambda, TowerUnit(*c.ctx, c.m - 1, 1));
    for (const ChainStage& s : chain.stages) {
      EXPECT_TRUE(s.degree_relation);
      EXPECT_EQ(s.newton_set, (std::vector<int>{0, static_cast<int>(p)}));
    }
    EXPECT_EQ(chain.stages.back().lambda, chain.stop_valuation);
    // the low digits agree with (-1)^k / k! mod p
    const RecurrencePolynomial r = MakeRecurrencePoly(c.ctx, kRecurrenceFirst);
    ASSERT_GE(chain.digits.size(), static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
      const UnramifiedCoeff want = EmbedRational(*c.ctx, r.coefficients[k], 1);
      EXPECT_EQ(chain.digits[k], c.ctx->residue(want).a) << k;
    }
  }
}

TEST_F(MacLaneTest, ChainAsInductiveValuation) {
  const SeriesElement base = BuildPiM1(p3_, 2).element;
  const ZetaExpansion z = BuildZeta(p3_, 3);
  const Degree1Chain chain = RunDegree1Chain(p3_, 3, 1, base, z);
  const InductiveValuation v = ChainValuation(chain);
  ASSERT_EQ(v.stages().size(), chain.stages.size());
  EXPECT_EQ(EvalValuation(v, PolyOverK::Linear(chain.a)),
            Value(chain.stop_valuation));
  EXPECT_EQ(Classify(v), PointType::kTypeII);
  const InductiveValuation c = Collapse(v);
  EXPECT_EQ(c.stages().size(), v.stages().size() - 1);
}

TEST_F(MacLaneTest, ChainRejectsWrongBase) {
  try {
    RunDegree1Chain(p3_, 3, 1, BuildPiM1(p3_, 3).element, BuildZeta(p3_, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST_F(MacLaneTest, DigitExpandRoundTrip) {
  const SeriesElement pi = BuildPi21(p3_).element;
  const Exponent e = Valuation(pi);
  const SeriesElement a = IntPow(pi, 2) + Int(p3_, 2) * IntPow(pi, 5);
  const DigitExpansion de = DigitExpand(p3_, a, pi, Exponent(6) * e);
  EXPECT_EQ(de.digits, (std::vector<int>{0, 0, 1, 0, 0, 2}));
  EXPECT_TRUE(!de.residual_bound || *de.residual_bound > Exponent(6) * e);

  const Exponent r = Exponent(8) * e;
  const SeriesElement geo = Invert(SeriesElement::One(p3_) - pi, r + e);
  const DigitExpansion g = DigitExpand(p3_, geo, pi, r);
  EXPECT_EQ(g.digits, std::vector<int>(9, 1));

  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> digit(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> want(9);
    SeriesElement sum = SeriesElement::Zero(p3_);
    SeriesElement power = SeriesElement::One(p3_);
    for (int k = 0; k <= 8; ++k) {
      want[k] = digit(rng);
      sum = sum + Int(p3_, want[k]) * power;
      power = power * pi;
    }
    while (!want.empty() && want.back() == 0) want.pop_back();
    const DigitExpansion got = DigitExpand(p3_, sum, pi, r);
    EXPECT_EQ(got.digits, want) << trial;
    EXPECT_TRUE(!got.residual_bound || *got.residual_bound > r);
  }
}

TEST_F(MacLaneTest, DigitExpandErrors) {
  const SeriesElement pi = BuildPi21(p3_).element;
  try {
    DigitExpand(p3_, Mono(p3_, 1, Exponent(1, 36)), pi, Exponent(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInGroundField);
  }
  try {
    DigitExpand(p3_, pi, pi, *pi.precision() + Exponent(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecisionExhausted);
  }
}

TEST_F(MacLaneTest, AssembledUniformizers) {
  struct Case {
    ContextPtr ctx;
    int m;
    Exponent v;
  };
  for (const Case& c : {Case{p3_, 3, Exponent(1, 54)}, Case{p5_, 3, Exponent(1, 500)},
                        Case{p3_, 4, Exponent(1, 162)}}) {
    const std::int64_t p = c.ctx->p();
    const AssembledUniformizer a =
        MacLaneUniformizer(c.ctx, c.m, 1, BuildPiM1(c.ctx, c.m - 1).element);
    EXPECT_EQ(a.certificate.valuation, c.v);
    EXPECT_TRUE(a.certificate.verified);
    EXPECT_EQ(a.recipe.alpha * p + a.recipe.beta * a.recipe.d, 1);
    EXPECT_GE(a.recipe.beta, 0);
    EXPECT_LT(a.recipe.beta, p);
    EXPECT_EQ(a.recipe.alpha, -2 * p + 2);
    EXPECT_EQ(a.recipe.beta, 1);
    std::int64_t big = p - 1;
    for (int i = 0; i < c.m; ++i) big *= p;
    EXPECT_EQ(a.certificate.valuation * Exponent(big), Exponent(1));
    for (const mpq_class& q : a.recipe.r.coefficients) {
      EXPECT_TRUE(q >= 0 && q < p && q.get_den() == 1) << q;
    }
  }
}

TEST_F(MacLaneTest, RecipeJsonLayout) {
  const AssembledUniformizer a =
      MacLaneUniformizer(p3_, 3, 1, BuildPi21(p3_).element);
  const Json j = RecipeToJson(a);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"p", "m", "n", "R_digits", "d",
                                            "alpha", "beta", "valuation",
                                            "verified"}));
  EXPECT_EQ(j["d"], 13);
  EXPECT_EQ(j["alpha"], -4);
  EXPECT_EQ(j["valuation"]["den"], 54);
  EXPECT_EQ(j["R_digits"][0], 1);
}

TEST_F(MacLaneTest, TaylorShiftKeepsBinomialPrecision) {
  // s known to 2/3; the T and T^2 coefficients of (T + s)^3 carry a factor 3
  const SeriesElement s =
      Int(p3_, 1) + Mono(p3_, 1, Exponent(1, 6)) + SeriesElement::Zero(p3_, Exponent(2, 3));
  const PolyOverK g = TaylorShift(PolyOverK::MonomialT(p3_, 3), s);
  for (int j : {1, 2}) {
    EXPECT_EQ(*g.coeff(j).precision(), Exponent(5, 3)) << j;
    EXPECT_EQ(Valuation(g.coeff(j)), Exponent(1)) << j;
  }
}

TEST_F(MacLaneTest, ValueGroupMembership) {
  const ValueGroup g{18};
  EXPECT_TRUE(g.Contains(Exponent(1, 6)));
  EXPECT_FALSE(g.Contains(Exponent(13, 54)));
  EXPECT_EQ(g.Index(Exponent(1, 3)), 6);
  EXPECT_THROW(g.Index(Exponent(1, 5)), Error);
}

}  // namespace
}  // namespace tatetower
