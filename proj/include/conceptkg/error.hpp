// Copyright 2026 The conceptkg Authors.
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

#ifndef CONCEPTKG_ERROR_HPP_
#define CONCEPTKG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ckg {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kCycleDetected,
  kDanglingReference,
  kDuplicateLabel,
  kUnknownConcept,
  kSeedNotFound,
  kEmptyFragment,
  kUnreadableSource,
  kSchemaViolation,
  kUnknownTemplate,
  kFingerprintMismatch,
  kMismatchedDataset,
  kDenominatorMismatch,
  kNetworkError,
  kMalformedResponse,
  kAuthMissing,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; the code is what callers
// (and the C API) switch on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ckg

#endif  // CONCEPTKG_ERROR_HPP_
