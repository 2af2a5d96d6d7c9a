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

#include "cnpverify/errors.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"
#include "absl/types/optional.h"
#include "absl/strings/string_view.h"

namespace cnpverify {
namespace {

constexpr absl::string_view kErrorCodeUrl = "type.cnpverify/error-code";
constexpr absl::string_view kOperationUrl = "type.cnpverify/operation";

constexpr std::array<std::pair<ErrorCode, absl::string_view>, 23> kCodeNames = {{
    {ErrorCode::kInvalidCidr, "InvalidCidr"},
    {ErrorCode::kInvalidNamespace, "InvalidNamespace"},
    {ErrorCode::kInvalidEndpoint, "InvalidEndpoint"},
    {ErrorCode::kInvalidDirection, "InvalidDirection"},
    {ErrorCode::kUnknownApplication, "UnknownApplication"},
    {ErrorCode::kDuplicateEndpoint, "DuplicateEndpoint"},
    {ErrorCode::kDuplicatePolicy, "DuplicatePolicy"},
    {ErrorCode::kDuplicateApplicationId, "DuplicateApplicationId"},
    {ErrorCode::kSenderUnknown, "SenderUnknown"},
    {ErrorCode::kSenderReceiveOnly, "SenderReceiveOnly"},
    {ErrorCode::kReceiverUnknown, "ReceiverUnknown"},
    {ErrorCode::kReceiverNotListening, "ReceiverNotListening"},
    {ErrorCode::kEndpointUnknown, "EndpointUnknown"},
    {ErrorCode::kPolicyViolation, "PolicyViolation"},
    {ErrorCode::kMalformedYaml, "MalformedYaml"},
    {ErrorCode::kUnsupportedApiVersion, "UnsupportedApiVersion"},
    {ErrorCode::kUnsupportedKind, "UnsupportedKind"},
    {ErrorCode::kInvalidCidrString, "InvalidCidrString"},
    {ErrorCode::kInvalidPort, "InvalidPort"},
    {ErrorCode::kEmptyExpansion, "EmptyExpansion"},
    {ErrorCode::kUnknownEndpointReference, "UnknownEndpointReference"},
    {ErrorCode::kUnknownPolicyReference, "UnknownPolicyReference"},
    {ErrorCode::kDuplicateSymbol, "DuplicateSymbol"},
}};

constexpr std::array<std::pair<Operation, absl::string_view>, 6> kOpNames = {{
    {Operation::kGetApplication, "GetApplication"},
    {Operation::kCreateEndpoint, "CreateEndpoint"},
    {Operation::kCreatePolicy, "CreatePolicy"},
    {Operation::kDeployApplication, "DeployApplication"},
    {Operation::kSendData, "SendData"},
    {Operation::kTransferData, "TransferData"},
}};

absl::StatusCode CanonicalCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateEndpoint:
    case ErrorCode::kDuplicatePolicy:
    case ErrorCode::kDuplicateApplicationId:
    case ErrorCode::kDuplicateSymbol:
      return absl::StatusCode::kAlreadyExists;
    case ErrorCode::kUnknownApplication:
    case ErrorCode::kSenderUnknown:
    case ErrorCode::kReceiverUnknown:
    case ErrorCode::kEndpointUnknown:
    case ErrorCode::kUnknownEndpointReference:
    case ErrorCode::kUnknownPolicyReference:
      return absl::StatusCode::kNotFound;
    case ErrorCode::kSenderReceiveOnly:
    case ErrorCode::kReceiverNotListening:
    case ErrorCode::kPolicyViolation:
      return absl::StatusCode::kFailedPrecondition;
    case ErrorCode::kUnsupportedApiVersion:
    case ErrorCode::kUnsupportedKind:
      return absl::StatusCode::kUnimplemented;
    default:
      return absl::StatusCode::kInvalidArgument;
  }
}

}  // namespace

absl::string_view ErrorCodeName(ErrorCode code) {
  for (const auto& [c, name] : kCodeNames) {
    if (c == code) return name;
  }
  return "Unknown";
}

absl::string_view OperationName(Operation op) {
  for (const auto& [o, name] : kOpNames) {
    if (o == op) return name;
  }
  return "Unknown";
}

std::optional<Operation> OperationFromName(absl::string_view name) {
  for (const auto& [o, n] : kOpNames) {
    if (n == name) return o;
  }
  return std::nullopt;
}

absl::Status MakeError(ErrorCode code, absl::string_view message) {
  absl::Status status(CanonicalCode(code),
                      std::string(ErrorCodeName(code)) + ": " +
                          std::string(message));
  status.SetPayload(kErrorCodeUrl, absl::Cord(ErrorCodeName(code)));
  return status;
}

absl::Status MakeViolation(Operation op, ErrorCode code,
                           absl::string_view message) {
  absl::Status status(CanonicalCode(code),
                      std::string(OperationName(op)) + " precondition (" +
                          std::string(ErrorCodeName(code)) +
                          "): " + std::string(message));
  status.SetPayload(kErrorCodeUrl, absl::Cord(ErrorCodeName(code)));
  status.SetPayload(kOperationUrl, absl::Cord(OperationName(op)));
  return status;
}

std::optional<ErrorCode> GetErrorCode(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kErrorCodeUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& [c, n] : kCodeNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::optional<Operation> GetOperation(const absl::Status& status) {
  absl::optional<absl::Cord> payload = status.GetPayload(kOperationUrl);
  if (!payload.has_value()) return std::nullopt;
  return OperationFromName(std::string(*payload));
}

}  // namespace cnpverify
