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
// File: cilium_policy.h
// -----------------------------------------------------------------------------
//
// Reads the layer-3/4 subset of CiliumNetworkPolicy (cilium.io/v2) and expands
// it into single-pair policies:
//
//   spec.endpointSelector.matchLabels
//   spec.ingress[].fromCIDRSet[].cidr
//   spec.ingress[].fromEndpoints[].matchLabels
//   spec.ingress[].toPorts[].ports[].port
//   spec.egress[].toCIDRSet[].cidr
//   spec.egress[].toPorts[].ports[].port
//
// Other keys under `spec` are reported as warnings and otherwise ignored.

#ifndef CNPVERIFY_CILIUM_POLICY_H_
#define CNPVERIFY_CILIUM_POLICY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "cnpverify/cidr.h"
#include "cnpverify/model.h"

namespace cnpverify {

using LabelMap = std::map<std::string, std::string>;

// Namespace id given to every namespace read from a document by name.
inline constexpr std::uint32_t kDefaultNamespaceId = 1;

inline constexpr absl::string_view kAppLabelKey = "app";
inline constexpr absl::string_view kPodNamespaceLabelKey =
    "io.kubernetes.pod.namespace";

struct IngressRule {
  std::vector<Cidr> from_cidr_set;
  std::vector<LabelMap> from_endpoints;
  std::vector<int> to_ports;
};

struct EgressRule {
  std::vector<Cidr> to_cidr_set;
  std::vector<int> to_ports;
};

struct CiliumPolicyDoc {
  std::string api_version;
  std::string kind;
  std::string name;
  std::string namespace_name;
  LabelMap endpoint_selector;
  std::vector<IngressRule> ingress_rules;
  std::vector<EgressRule> egress_rules;
  // Ignored keys, as "spec.ingress[0].toFQDNs: ignored".
  std::vector<std::string> warnings;
};

// Parses exactly one YAML document.
//
// Errors: kMalformedYaml, kUnsupportedApiVersion, kUnsupportedKind,
// kInvalidCidrString, kInvalidPort.
absl::StatusOr<CiliumPolicyDoc> ParseCiliumPolicy(absl::string_view text);

// Parses a stream of one or more "---"-separated documents.
absl::StatusOr<std::vector<CiliumPolicyDoc>> ParseCiliumPolicies(
    absl::string_view text);

// Collapses a selector to an endpoint label: the `app` value, followed by
// every other key as "key=value" in key order, comma-separated. nullopt if the
// map is empty.
std::optional<std::string> SelectorLabel(const LabelMap& labels);

// One policy per (rule, source, port):
//
//   ingress: (selected endpoint with the port, peer)         direction 0
//   egress:  (selected endpoint, peer CIDR with the port)    direction 1
//
// A rule without ports contributes one policy per source with no port. The
// selected endpoint is the document namespace plus SelectorLabel of the
// endpointSelector. A fromEndpoints peer uses its io.kubernetes.pod.namespace
// label if present, else the document namespace.
//
// Errors: kEmptyExpansion if the document yields no policies.
absl::StatusOr<std::vector<Policy>> ExpandRules(const CiliumPolicyDoc& doc);

}  // namespace cnpverify

#endif  // CNPVERIFY_CILIUM_POLICY_H_
