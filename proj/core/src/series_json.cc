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

#include "tatetower/series_json.h"

#include <string>
#include <vector>

#include "tatetower/error.h"

namespace tatetower {
namespace {

Json CoeffToJson(const PrimeContext& ctx, const UnramifiedCoeff& c) {
  const int L = c.is_exact() ? ctx.max_digits() : c.digits();
  const UnramifiedCoeff r = c.is_exact() ? ctx.coeff(c.a(), c.b(), L) : c;
  std::int64_t a = r.a(), b = r.b();
  Json digits = Json::array();
  for (int t = 0; t < L; ++t) {
    digits.push_back((a % ctx.p()) + ctx.p() * (b % ctx.p()));
    a /= ctx.p();
    b /= ctx.p();
  }
  Json j;
  j["digits"] = std::move(digits);
  j["L"] = c.is_exact() ? 0 : c.digits();
  return j;
}

UnramifiedCoeff CoeffFromJson(const PrimeContext& ctx, const Json& j) {
  const int L = j.at("L").get<int>();
  const auto& digits = j.at("digits");
  const int n = static_cast<int>(digits.size());
  if (L < 0 || L > ctx.max_digits() || n == 0 || n > ctx.max_digits() ||
      (L > 0 && n != L)) {
    throw Error(ErrorCode::kInvalidArgument, "malformed coefficient digits");
  }
  std::int64_t a = 0, b = 0;
  for (int t = n - 1; t >= 0; --t) {
    const Fp2 d = ctx.fp_decode(digits[t].get<std::int64_t>());
    a = a * ctx.p() + d.a;
    b = b * ctx.p() + d.b;
  }
  const UnramifiedCoeff c = ctx.coeff(a, b, n);
  return L == 0 ? ctx.to_exact(c) : c;
}

}  // namespace

Json ExponentToJson(const Exponent& e) {
  Json j;
  j["num"] = e.num();
  j["den"] = e.den();
  return j;
}

Exponent ExponentFromJson(const Json& j) {
  return Exponent(j.at("num").get<std::int64_t>(),
                  j.at("den").get<std::int64_t>());
}

Json SeriesToJson(const SeriesElement& e) {
  const PrimeContext& ctx = e.ctx();
  Json j;
  j["p"] = ctx.p();
  j["sigma_index"] =
      e.sigma_index() == 0 ? Json(nullptr) : Json(e.sigma_index());
  j["precision"] = e.precision() ? ExponentToJson(*e.precision()) : Json("exact");
  Json terms = Json::array();
  for (const Term& t : e.terms()) {
    Json tj;
    tj["coeff"] = CoeffToJson(ctx, t.coeff);
    tj["exp"] = ExponentToJson(t.exp);
    tj["sigma_pow"] = t.sigma_pow;
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  return j;
}

SeriesElement SeriesFromJson(const Json& j, ContextPtr ctx) {
  try {
    const std::int64_t p = j.at("p").get<std::int64_t>();
    if (!ctx) ctx = PrimeContext::Create(p);
    if (ctx->p() != p) {
      throw Error(ErrorCode::kInvalidArgument,
                  "series is over p=" + std::to_string(p));
    }
    const Json& sj = j.at("sigma_index");
    const int k = sj.is_null() ? 0 : sj.get<int>();
    Precision precision;
    const Json& pj = j.at("precision");
    if (!(pj.is_string() && pj.get<std::string>() == "exact")) {
      precision = ExponentFromJson(pj);
    }
    std::vector<Term> terms;
    for (const Json& tj : j.at("terms")) {
      terms.push_back(Term{CoeffFromJson(*ctx, tj.at("coeff")),
                           ExponentFromJson(tj.at("exp")),
                           tj.at("sigma_pow").get<int>()});
    }
    return SeriesElement::FromTerms(ctx, k, std::move(terms), precision);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed series JSON: ") + e.what());
  }
}

}  // namespace tatetower
