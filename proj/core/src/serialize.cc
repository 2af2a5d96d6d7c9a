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

#include "cnpverify/serialize.h"

#include <cstdint>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "cnpverify/errors.h"

namespace cnpverify {
namespace {

using ::nlohmann::json;

absl::Status Malformed(absl::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat("malformed serialized policy: ", what));
}

}  // namespace

json EndpointToJson(const Endpoint& endpoint) {
  json out = json::object();
  if (endpoint.cidr()) out["cidr"] = endpoint.cidr()->ToString();
  if (endpoint.ns()) {
    out["namespace"] = {{"name", endpoint.ns()->name()},
                        {"id", endpoint.ns()->id()}};
  }
  if (endpoint.port()) out["port"] = *endpoint.port();
  if (endpoint.label()) out["label"] = *endpoint.label();
  return out;
}

absl::StatusOr<Endpoint> EndpointFromJson(const json& in) {
  if (!in.is_object()) return Malformed("endpoint is not an object");
  std::optional<Cidr> cidr;
  std::optional<Namespace> ns;
  std::optional<int> port;
  std::optional<std::string> label;
  for (const auto& [key, value] : in.items()) {
    if (key == "cidr") {
      if (!value.is_string()) return Malformed("cidr is not a string");
      absl::StatusOr<Cidr> parsed = Cidr::Parse(value.get<std::string>());
      if (!parsed.ok()) return parsed.status();
      cidr = *parsed;
    } else if (key == "namespace") {
      if (!value.is_object() || !value.contains("name") ||
          !value.contains("id") || !value["name"].is_string() ||
          !value["id"].is_number_unsigned() ||
          value["id"].get<std::uint64_t>() > UINT32_MAX) {
        return Malformed("namespace needs string name and unsigned id");
      }
      absl::StatusOr<Namespace> parsed =
          Namespace::Create(value["name"].get<std::string>(),
                            value["id"].get<std::uint32_t>());
      if (!parsed.ok()) return parsed.status();
      ns = *std::move(parsed);
    } else if (key == "port") {
      if (!value.is_number_integer()) return Malformed("port is not an integer");
      const std::int64_t raw = value.get<std::int64_t>();
      // Out-of-range values are left to Endpoint::Create to reject.
      port = raw < 0 || raw > 65535 ? -1 : static_cast<int>(raw);
    } else if (key == "label") {
      if (!value.is_string()) return Malformed("label is not a string");
      label = value.get<std::string>();
    } else {
      return Malformed(absl::StrCat("unknown endpoint key '", key, "'"));
    }
  }
  return Endpoint::Create(std::move(cidr), std::move(ns), port,
                          std::move(label));
}

json PolicyToJson(const Policy& policy, bool with_origin) {
  json out = {{"direction", DirectionToInt(policy.direction())},
              {"first", EndpointToJson(policy.first())},
              {"second", EndpointToJson(policy.second())}};
  if (with_origin && policy.origin()) {
    out["origin"] = {{"document", policy.origin()->document},
                     {"section", policy.origin()->section},
                     {"rule", policy.origin()->rule_index}};
  }
  return out;
}

absl::StatusOr<Policy> PolicyFromJson(const json& in) {
  if (!in.is_object() || !in.contains("direction") || !in.contains("first") ||
      !in.contains("second")) {
    return Malformed("policy needs direction, first and second");
  }
  if (!in["direction"].is_number_integer()) {
    return MakeError(ErrorCode::kInvalidDirection,
                     "direction is not an integer");
  }
  absl::StatusOr<Direction> direction =
      DirectionFromInt(in["direction"].get<std::int64_t>());
  if (!direction.ok()) return direction.status();
  absl::StatusOr<Endpoint> first = EndpointFromJson(in["first"]);
  if (!first.ok()) return first.status();
  absl::StatusOr<Endpoint> second = EndpointFromJson(in["second"]);
  if (!second.ok()) return second.status();

  std::optional<PolicyOrigin> origin;
  if (in.contains("origin")) {
    const json& o = in["origin"];
    if (!o.is_object() || !o.contains("document") || !o.contains("rule") ||
        !o["document"].is_string() || !o["rule"].is_number_integer()) {
      return Malformed("origin needs document and rule");
    }
    origin = PolicyOrigin{.document = o["document"].get<std::string>(),
                          .rule_index = o["rule"].get<int>(),
                          .section = o.value("section", std::string())};
  }
  for (const auto& [key, value] : in.items()) {
    if (key != "direction" && key != "first" && key != "second" &&
        key != "origin") {
      return Malformed(absl::StrCat("unknown policy key '", key, "'"));
    }
  }
  return Policy(*std::move(first), *std::move(second), *direction,
                std::move(origin));
}

std::string SerializeEndpoint(const Endpoint& endpoint) {
  return EndpointToJson(endpoint).dump();
}

std::string SerializePolicy(const Policy& policy, bool with_origin) {
  return PolicyToJson(policy, with_origin).dump();
}

absl::StatusOr<Policy> ParsePolicy(absl::string_view text) {
  json parsed = json::parse(text, /*cb=*/nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) return Malformed("not valid JSON");
  return PolicyFromJson(parsed);
}

std::string SerializePolicies(std::span<const Policy> policies) {
  std::string out;
  for (const Policy& policy : policies) {
    absl::StrAppend(&out, SerializePolicy(policy), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<Policy>> ParsePolicies(absl::string_view text) {
  std::vector<Policy> policies;
  for (absl::string_view line : absl::StrSplit(text, '\n', absl::SkipEmpty())) {
    absl::StatusOr<Policy> policy = ParsePolicy(line);
    if (!policy.ok()) return policy.status();
    policies.push_back(*std::move(policy));
  }
  return policies;
}

}  // namespace cnpverify
