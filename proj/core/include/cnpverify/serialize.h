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
// File: serialize.h
// -----------------------------------------------------------------------------
//
// Canonical text form of endpoints and policies: compact JSON with keys in
// lexicographic order and absent fields omitted, e.g.
//
//   {"direction":0,"first":{"label":"WebUI","namespace":{"id":1,"name":"NS-UI"},
//    "port":443},"second":{"cidr":"10.28.1.2/30"}}
//
// Two structurally equal values always serialize to the same bytes, so the
// serialized form doubles as a total order.

#ifndef CNPVERIFY_SERIALIZE_H_
#define CNPVERIFY_SERIALIZE_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "cnpverify/model.h"
#include "nlohmann/json.hpp"

namespace cnpverify {

nlohmann::json EndpointToJson(const Endpoint& endpoint);
absl::StatusOr<Endpoint> EndpointFromJson(const nlohmann::json& json);

// `with_origin` adds an "origin" object; it never affects equality.
nlohmann::json PolicyToJson(const Policy& policy, bool with_origin = true);
absl::StatusOr<Policy> PolicyFromJson(const nlohmann::json& json);

std::string SerializeEndpoint(const Endpoint& endpoint);
std::string SerializePolicy(const Policy& policy, bool with_origin = true);
absl::StatusOr<Policy> ParsePolicy(absl::string_view text);

// One policy per line.
std::string SerializePolicies(std::span<const Policy> policies);
absl::StatusOr<std::vector<Policy>> ParsePolicies(absl::string_view text);

}  // namespace cnpverify

#endif  // CNPVERIFY_SERIALIZE_H_
