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

#ifndef TATETOWER_SERIES_JSON_H_
#define TATETOWER_SERIES_JSON_H_

#include <nlohmann/json.hpp>

#include "tatetower/exponent.h"
#include "tatetower/series.h"

namespace tatetower {

using Json = nlohmann::ordered_json;

Json ExponentToJson(const Exponent& e);
Exponent ExponentFromJson(const Json& j);

// Coefficient digits are little-endian codes a_t + p*b_t in 0..p^2-1.
// Exact coefficients are written with "L": 0 and max_digits() digits of
// their residue, and read back as the balanced representative.
Json SeriesToJson(const SeriesElement& e);

// `ctx` must be over the prime recorded in the document; pass nullptr to
// create a context with default working digits.
SeriesElement SeriesFromJson(const Json& j, ContextPtr ctx = nullptr);

}  // namespace tatetower

#endif  // TATETOWER_SERIES_JSON_H_
