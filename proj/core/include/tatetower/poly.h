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

#ifndef TATETOWER_POLY_H_
#define TATETOWER_POLY_H_

#include <vector>

#include "tatetower/series.h"

namespace tatetower {

// Dense polynomial in T with series coefficients; coeffs()[i] multiplies T^i.
// Trailing coefficients without any term below their precision are dropped,
// so the leading coefficient is always nonzero modulo its precision.
class PolyOverK {
 public:
  PolyOverK() = default;
  PolyOverK(ContextPtr ctx, std::vector<SeriesElement> coeffs);

  static PolyOverK Constant(const SeriesElement& c);
  // T - c
  static PolyOverK Linear(const SeriesElement& c);
  static PolyOverK MonomialT(ContextPtr ctx, int degree);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<SeriesElement>& coeffs() const { return coeffs_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  // Coefficient of T^i, an exact zero beyond the degree.
  SeriesElement coeff(int i) const;
  bool is_monic() const;

 private:
  ContextPtr ctx_;
  std::vector<SeriesElement> coeffs_;
};

PolyOverK Add(const PolyOverK& f, const PolyOverK& g);
PolyOverK Sub(const PolyOverK& f, const PolyOverK& g);
PolyOverK Mul(const PolyOverK& f, const PolyOverK& g);
PolyOverK Scale(const PolyOverK& f, const SeriesElement& c);
PolyOverK Derivative(const PolyOverK& f);
// f(T + c)
PolyOverK TaylorShift(const PolyOverK& f, const SeriesElement& c);
SeriesElement Evaluate(const PolyOverK& f, const SeriesElement& x);

struct PolyDivision {
  PolyOverK quotient;
  PolyOverK remainder;
};

// Euclidean division by a monic polynomial of degree >= 1.
PolyDivision DivMod(const PolyOverK& f, const PolyOverK& monic);

}  // namespace tatetower

#endif  // TATETOWER_POLY_H_
