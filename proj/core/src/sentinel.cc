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

#include "cnpverify/sentinel.h"

#include "absl/strings/str_cat.h"

namespace cnpverify {
namespace {

Cidr AnyCidr() { return *Cidr::Create(0, 0, 0, 0, 0); }

}  // namespace

absl::StatusOr<Endpoint> FromSentinels(const SentinelEndpoint& raw) {
  std::optional<Cidr> cidr;
  if (raw.cidr != AnyCidr()) cidr = raw.cidr;

  std::optional<Namespace> ns;
  if (raw.namespace_name != kNoNamespaceName || raw.namespace_id != 0) {
    absl::StatusOr<Namespace> parsed =
        Namespace::Create(raw.namespace_name, raw.namespace_id);
    if (!parsed.ok()) return parsed.status();
    ns = *std::move(parsed);
  }

  std::optional<int> port;
  if (raw.port != 0) port = raw.port;

  std::optional<std::string> label;
  if (!raw.label.empty()) label = raw.label;

  return Endpoint::Create(std::move(cidr), std::move(ns), port,
                          std::move(label));
}

SentinelEndpoint ToSentinels(const Endpoint& endpoint) {
  SentinelEndpoint raw{.cidr = endpoint.cidr().value_or(AnyCidr()),
                       .namespace_name = std::string(kNoNamespaceName),
                       .namespace_id = 0,
                       .port = 0,
                       .label = endpoint.label().value_or("")};
  if (endpoint.ns()) {
    raw.namespace_name = endpoint.ns()->name();
    raw.namespace_id = endpoint.ns()->id();
  }
  if (endpoint.port()) raw.port = *endpoint.port();
  return raw;
}

std::string FormatVdm(const Endpoint& endpoint) {
  SentinelEndpoint raw = ToSentinels(endpoint);
  const auto& o = raw.cidr.octets();
  return absl::StrCat("mk_Endpoint(mk_CIDR(", o[0], ",", o[1], ",", o[2], ",",
                      o[3], ",", raw.cidr.prefix_length(), "), mk_Namespace(\"",
                      raw.namespace_name, "\",", raw.namespace_id, "), ",
                      raw.port, ", \"", raw.label, "\")");
}

}  // namespace cnpverify
