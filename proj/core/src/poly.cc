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

#include "tatetower/poly.h"

#include <algorithm>
#include <utility>

#include "tatetower/error.h"

namespace tatetower {
namespace {

bool IsExactOne(const SeriesElement& c) {
  return c.is_exact() && c.terms().size() == 1 &&
         c.terms()[0].sigma_pow == 0 && c.terms()[0].exp.is_zero() &&
         c.terms()[0].coeff == UnramifiedCoeff::Exact(1);
}

}  // namespace

PolyOverK::PolyOverK(ContextPtr ctx, std::vector<SeriesElement> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().empty()) coeffs_.pop_back();
}

PolyOverK PolyOverK::Constant(const SeriesElement& c) {
  return PolyOverK(c.context(), {c});
}

PolyOverK PolyOverK::Linear(const SeriesElement& c) {
  return PolyOverK(c.context(), {Neg(c), SeriesElement::One(c.context())});
}

PolyOverK PolyOverK::MonomialT(ContextPtr ctx, int degree) {
  std::vector<SeriesElement> c(degree + 1, SeriesElement::Zero(ctx));
  c[degree] = SeriesElement::One(ctx);
  return PolyOverK(std::move(ctx), std::move(c));
}

SeriesElement PolyOverK::coeff(int i) const {
  if (i < 0 || i > degree()) return SeriesElement::Zero(ctx_);
  return coeffs_[i];
}

bool PolyOverK::is_monic() const {
  return !coeffs_.empty() && IsExactOne(coeffs_.back());
}

PolyOverK Add(const PolyOverK& f, const PolyOverK& g) {
  const int n = std::max(f.degree(), g.degree()) + 1;
  std::vector<SeriesElement> c;
  c.reserve(n);
  for (int i = 0; i < n; ++i) c.push_back(Add(f.coeff(i), g.coeff(i)));
  return PolyOverK(f.context() ? f.context() : g.context(), std::move(c));
}

PolyOverK Sub(const PolyOverK& f, const PolyOverK& g) {
  const int n = std::max(f.degree(), g.degree()) + 1;
  std::vector<SeriesElement> c;
  c.reserve(n);
  for (int i = 0; i < n; ++i) c.push_back(Sub(f.coeff(i), g.coeff(i)));
  return PolyOverK(f.context() ? f.context() : g.context(), std::move(c));
}

PolyOverK Mul(const PolyOverK& f, const PolyOverK& g) {
  if (f.is_zero() || g.is_zero()) return PolyOverK(f.context(), {});
  std::vector<SeriesElement> c(f.degree() + g.degree() + 1,
                               SeriesElement::Zero(f.context()));
  for (int i = 0; i <= f.degree(); ++i) {
    for (int j = 0; j <= g.degree(); ++j) {
      c[i + j] = Add(c[i + j], Mul(f.coeffs()[i], g.coeffs()[j]));
    }
  }
  return PolyOverK(f.context(), std::move(c));
}

PolyOverK Scale(const PolyOverK& f, const SeriesElement& s) {
  std::vector<SeriesElement> c;
  for (const SeriesElement& x : f.coeffs()) c.push_back(Mul(x, s));
  return PolyOverK(f.context(), std::move(c));
}

PolyOverK Derivative(const PolyOverK& f) {
  std::vector<SeriesElement> c;
  for (int i = 1; i <= f.degree(); ++i) {
    c.push_back(Mul(f.coeffs()[i], SeriesElement::Integer(f.context(), i)));
  }
  return PolyOverK(f.context(), std::move(c));
}

PolyOverK TaylorShift(const PolyOverK& f, const SeriesElement& s) {
  // Coefficient j is sum_{i>=j} C(i,j) a_i s^{i-j}. Scaling by the exact
  // binomial keeps its p-part in the precision, which Horner's repeated
  // additions of s would lose.
  const ContextPtr& ctx = s.context();
  const int n = f.degree();
  if (n < 0) return PolyOverK(ctx, {});
  std::vector<SeriesElement> powers{SeriesElement::One(ctx)};
  for (int i = 1; i <= n; ++i) powers.push_back(Mul(powers.back(), s));
  std::vector<SeriesElement> out;
  std::vector<mpz_class> binom(n + 1);
  for (int j = 0; j <= n; ++j) {
    SeriesElement c = SeriesElement::Zero(ctx);
    for (int i = j; i <= n; ++i) {
      mpz_bin_uiui(binom[i].get_mpz_t(), i, j);
      if (!binom[i].fits_slong_p()) {
        throw Error(ErrorCode::kOverflow, "binomial in Taylor shift");
      }
      const SeriesElement b = SeriesElement::Integer(ctx, binom[i].get_si());
      c = Add(c, Mul(Mul(b, f.coeffs()[i]), powers[i - j]));
    }
    out.push_back(std::move(c));
  }
  return PolyOverK(ctx, std::move(out));
}

SeriesElement Evaluate(const PolyOverK& f, const SeriesElement& x) {
  SeriesElement acc = SeriesElement::Zero(x.context());
  for (int i = f.degree(); i >= 0; --i) {
    acc = Add(Mul(acc, x), f.coeffs()[i]);
  }
  return acc;
}

PolyDivision DivMod(const PolyOverK& f, const PolyOverK& monic) {
  if (!monic.is_monic() || monic.degree() < 1) {
    throw Error(ErrorCode::kInvalidArgument, "divisor must be monic, deg >= 1");
  }
  const int m = monic.degree();
  std::vector<SeriesElement> rem = f.coeffs();
  const int qdeg = f.degree() - m;
  if (qdeg < 0) return {PolyOverK(f.context(), {}), f};
  std::vector<SeriesElement> quo(qdeg + 1, SeriesElement::Zero(f.context()));
  for (int i = f.degree(); i >= m; --i) {
    const SeriesElement lead = rem[i];
    quo[i - m] = lead;
    for (int j = 0; j < m; ++j) {
      rem[i - m + j] = Sub(rem[i - m + j], Mul(lead, monic.coeffs()[j]));
    }
    rem[i] = SeriesElement::Zero(f.context());
  }
  rem.resize(m);
  return {PolyOverK(f.context(), std::move(quo)),
          PolyOverK(f.context(), std::move(rem))};
}

}  // namespace tatetower
