// Copyright 2026 The proxauth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace proxauth {

enum class ErrorCode {
  kConfig,
  kGeometry,
  kStratify,
  kDegenerateData,
  kShape,
  kEmptyMatrix,
  kEmptyInput,
  kNotApplicable,
  kSchema,
  kIo,
  kConflict,
  kValidation,
  kAuthFailed,
  kExpired,
  kIncomplete,
  kNotFound,
  kInvalidState,
  kTooManyRequests,
};

// Stable machine-readable name, used on the wire and in CLI diagnostics.
constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return "config_error";
    case ErrorCode::kGeometry: return "geometry_error";
    case ErrorCode::kStratify: return "stratify_error";
    case ErrorCode::kDegenerateData: return "degenerate_data";
    case ErrorCode::kShape: return "shape_error";
    case ErrorCode::kEmptyMatrix: return "empty_matrix";
    case ErrorCode::kEmptyInput: return "empty_input";
    case ErrorCode::kNotApplicable: return "not_applicable";
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kValidation: return "validation_error";
    case ErrorCode::kAuthFailed: return "auth_failed";
    case ErrorCode::kExpired: return "expired";
    case ErrorCode::kIncomplete: return "incomplete";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kInvalidState: return "invalid_state";
    case ErrorCode::kTooManyRequests: return "too_many_requests";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace proxauth
