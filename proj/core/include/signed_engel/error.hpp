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

#ifndef SIGNED_ENGEL_ERROR_HPP_
#define SIGNED_ENGEL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace signed_engel {

enum class ErrorCode {
  kZeroDenominator,
  kParseError,
  kOutOfDomain,
  kPrecisionExhausted,
  kIndexOutOfRange,
  kEmptyExpansion,
  kMalformed,
  kNotAdmissible,
  kOddFinalDigit,
  kExpansionTooShort,
  kOddDigitAtN,
  kSaturatedBatch,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this exception type; code()
// identifies the failure class independently of the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_ERROR_HPP_
