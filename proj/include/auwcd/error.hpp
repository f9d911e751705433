// Copyright 2026 The auwcd Authors.
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

#ifndef AUWCD_ERROR_HPP_
#define AUWCD_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace auwcd {

enum class ErrorCode {
  kInvalidInput,
  kShapeMismatch,
  kUnsupportedResample,
  kParseError,
  kBackendError,
  kNoPoints,
  kDegenerateRatio,
  kInvalidDataset,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a process exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// 0 ok, 2 invalid input, 3 backend error.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace auwcd

#endif  // AUWCD_ERROR_HPP_
