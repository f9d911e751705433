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

#include "auwcd/error.hpp"

namespace auwcd {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kUnsupportedResample: return "UnsupportedResample";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBackendError: return "BackendError";
    case ErrorCode::kNoPoints: return "NoPoints";
    case ErrorCode::kDegenerateRatio: return "DegenerateRatio";
    case ErrorCode::kInvalidDataset: return "InvalidDataset";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

int exit_code_for(ErrorCode code) noexcept {
  return code == ErrorCode::kBackendError ? 3 : 2;
}

}  // namespace auwcd
