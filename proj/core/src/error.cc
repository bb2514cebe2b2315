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

#include "tatetower/error.h"

namespace tatetower {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kDenominatorDivisibleByP:
      return "DenominatorDivisibleByP";
    case ErrorCode::kPrecisionLoss:
      return "PrecisionLoss";
    case ErrorCode::kAmbiguousLeading:
      return "AmbiguousLeading";
    case ErrorCode::kWindowBeyondAccumulation:
      return "WindowBeyondAccumulation";
    case ErrorCode::kPrecisionExhausted:
      return "PrecisionExhausted";
    case ErrorCode::kNonCoprimeStop:
      return "NonCoprimeStop";
    case ErrorCode::kUnsupportedDivisor:
      return "UnsupportedDivisor";
    case ErrorCode::kNotCollapsible:
      return "NotCollapsible";
    case ErrorCode::kInvalidChain:
      return "InvalidChain";
    case ErrorCode::kNotInGroundField:
      return "NotInGroundField";
    case ErrorCode::kMissingBaseUniformizer:
      return "MissingBaseUniformizer";
    case ErrorCode::kOverflow:
      return "Overflow";
  }
  return "Unknown";
}

}  // namespace tatetower
