// Copyright 2026 The cnpverify authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// -----------------------------------------------------------------------------
// File: errors.h
// -----------------------------------------------------------------------------
//
// Every failure in the library is an `absl::Status`. Failures that callers
// need to distinguish programmatically (contract violations, parse errors)
// additionally carry an `ErrorCode` and, for state operations, the name of the
// `Operation` whose precondition failed. Both travel as a status payload so
// they survive copying and `StatusOr` propagation.

#ifndef CNPVERIFY_ERRORS_H_
#define CNPVERIFY_ERRORS_H_

#include <optional>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"

namespace cnpverify {

enum class ErrorCode {
  // Model construction.
  kInvalidCidr,
  kInvalidNamespace,
  kInvalidEndpoint,
  kInvalidDirection,
  // State operations.
  kUnknownApplication,
  kDuplicateEndpoint,
  kDuplicatePolicy,
  kDuplicateApplicationId,
  kSenderUnknown,
  kSenderReceiveOnly,
  kReceiverUnknown,
  kReceiverNotListening,
  kEndpointUnknown,
  kPolicyViolation,
  // Ingestion.
  kMalformedYaml,
  kUnsupportedApiVersion,
  kUnsupportedKind,
  kInvalidCidrString,
  kInvalidPort,
  kEmptyExpansion,
  kUnknownEndpointReference,
  kUnknownPolicyReference,
  kDuplicateSymbol,
};

// State-changing (or state-reading) operations that have preconditions.
enum class Operation {
  kGetApplication,
  kCreateEndpoint,
  kCreatePolicy,
  kDeployApplication,
  kSendData,
  kTransferData,
};

absl::string_view ErrorCodeName(ErrorCode code);
absl::string_view OperationName(Operation op);
std::optional<Operation> OperationFromName(absl::string_view name);

// Builds a status carrying `code`. The absl canonical code is derived from
// `code` (e.g. duplicates map to kAlreadyExists).
absl::Status MakeError(ErrorCode code, absl::string_view message);

// Same as above, but also records which operation's precondition failed.
absl::Status MakeViolation(Operation op, ErrorCode code,
                           absl::string_view message);

std::optional<ErrorCode> GetErrorCode(const absl::Status& status);
std::optional<Operation> GetOperation(const absl::Status& status);

}  // namespace cnpverify

#endif  // CNPVERIFY_ERRORS_H_
