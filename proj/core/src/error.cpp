// Copyright 2026 The signed-engel Authors.
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

#include "signed_engel/error.hpp"

namespace signed_engel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kZeroDenominator:
      return "ZeroDenominator";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kOutOfDomain:
      return "OutOfDomain";
    case ErrorCode::kPrecisionExhausted:
      return "PrecisionExhausted";
    case ErrorCode::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::kEmptyExpansion:
      return "EmptyExpansion";
    case ErrorCode::kMalformed:
      return "Malformed";
    case ErrorCode::kNotAdmissible:
      return "NotAdmissible";
    case ErrorCode::kOddFinalDigit:
      return "OddFinalDigit";
    case ErrorCode::kExpansionTooShort:
      return "ExpansionTooShort";
    case ErrorCode::kOddDigitAtN:
      return "OddDigitAtN";
    case ErrorCode::kSaturatedBatch:
      return "SaturatedBatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace signed_engel
