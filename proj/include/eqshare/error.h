// Copyright 2026 The eqshare Authors
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

#ifndef EQSHARE_ERROR_H_
#define EQSHARE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqshare {

enum class ErrorCode {
  kInvalidArgument,
  kDegreeMismatch,
  kOrderCapExceeded,
  kInconsistentAction,
  kGroupMismatch,
  kNotGenerating,
  kAsymmetricGenset,
  kSizeMismatch,
  kActionMismatch,
  kNotSubgroup,
  kNodeBudgetExceeded,
  kSearchCapExceeded,
  kDesignInvariant,
  kSpecSyntax,
  kSpecInvalid,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this type. The code lets callers
// (and the CLI exit-code mapping) branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eqshare

#endif  // EQSHARE_ERROR_H_
