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

#include "conceptkg/error.hpp"

#include <cstdio>

#include "conceptkg/hash.hpp"

namespace ckg {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kUnknownConcept: return "UnknownConcept";
    case ErrorCode::kSeedNotFound: return "SeedNotFound";
    case ErrorCode::kEmptyFragment: return "EmptyFragment";
    case ErrorCode::kUnreadableSource: return "UnreadableSource";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kUnknownTemplate: return "UnknownTemplate";
    case ErrorCode::kFingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::kMismatchedDataset: return "MismatchedDataset";
    case ErrorCode::kDenominatorMismatch: return "DenominatorMismatch";
    case ErrorCode::kNetworkError: return "NetworkError";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kAuthMissing: return "AuthMissing";
  }
  return "Unknown";
}

std::string Fnv1a::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(state_));
  return buf;
}

}  // namespace ckg
