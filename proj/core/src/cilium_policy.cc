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

#include "cnpverify/cilium_policy.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "cnpverify/errors.h"
#include "cnpverify/status_macros.h"
#include "yaml_util.h"

namespace cnpverify {
namespace {

using internal::AsPort;
using internal::AsSequence;
using internal::AsString;
using internal::IsSet;
using internal::Malformed;
using internal::MapKeys;

constexpr absl::string_view kApiVersion = "cilium.io/v2";
constexpr absl::string_view kKind = "CiliumNetworkPolicy";

void Ignore(CiliumPolicyDoc& doc, absl::string_view path) {
  doc.warnings.push_back(absl::StrCat(path, ": ignored"));
}

absl::StatusOr<LabelMap> ParseMatchLabels(const YAML::Node& selector,
                                          const std::string& path,
                                          CiliumPolicyDoc& doc) {
  CNPV_ASSIGN_OR_RETURN(std::vector<std::string> keys, MapKeys(selector, path));
  LabelMap labels;
  for (const std::string& key : keys) {
    const std::string child = absl::StrCat(path, ".", key);
    if (key != "matchLabels") {
      Ignore(doc, child);
      continue;
    }
    const YAML::Node match_labels = selector[key];
    if (!IsSet(match_labels)) continue;
    CNPV_ASSIGN_OR_RETURN(std::vector<std::string> label_keys,
                          MapKeys(match_labels, child));
    for (const std::string& label : label_keys) {
      CNPV_ASSIGN_OR_RETURN(
          std::string value,
          AsString(match_labels[label], absl::StrCat(child, ".", label)));
      labels[label] = std::move(value);
    }
  }
  return labels;
}

absl::StatusOr<std::vector<Cidr>> ParseCidrSet(const YAML::Node& node,
                                               const std::string& path,
                                               CiliumPolicyDoc& doc) {
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> items, AsSequence(node, path));
  std::vector<Cidr> cidrs;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string item_path = absl::StrCat(path, "[", i, "]");
    CNPV_ASSIGN_OR_RETURN(std::vector<std::string> keys,
                          MapKeys(items[i], item_path));
    bool has_cidr = false;
    for (const std::string& key : keys) {
      if (key != "cidr") {
        Ignore(doc, absl::StrCat(item_path, ".", key));
        continue;
      }
      CNPV_ASSIGN_OR_RETURN(std::string text,
                            AsString(items[i][key], item_path + ".cidr"));
      absl::StatusOr<Cidr> cidr = Cidr::Parse(text);
      if (!cidr.ok()) {
        return MakeError(ErrorCode::kInvalidCidrString,
                         absl::StrCat(item_path, ".cidr: '", text,
                                      "' is not a valid IPv4 CIDR"));
      }
      cidrs.push_back(*cidr);
      has_cidr = true;
    }
    if (!has_cidr) return Malformed(item_path, "missing cidr");
  }
  return cidrs;
}

absl::StatusOr<std::vector<int>> ParseToPorts(const YAML::Node& node,
                                              const std::string& path,
                                              CiliumPolicyDoc& doc) {
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> entries, AsSequence(node, path));
  std::vector<int> ports;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string entry_path = absl::StrCat(path, "[", i, "]");
    CNPV_ASSIGN_OR_RETURN(std::vector<std::string> keys,
                          MapKeys(entries[i], entry_path));
    for (const std::string& key : keys) {
      if (key != "ports") {
        Ignore(doc, absl::StrCat(entry_path, ".", key));
        continue;
      }
      CNPV_ASSIGN_OR_RETURN(
          std::vector<YAML::Node> port_items,
          AsSequence(entries[i][key], entry_path + ".ports"));
      for (std::size_t j = 0; j < port_items.size(); ++j) {
        const std::string port_path =
            absl::StrCat(entry_path, ".ports[", j, "]");
        CNPV_ASSIGN_OR_RETURN(std::vector<std::string> port_keys,
                              MapKeys(port_items[j], port_path));
        bool has_port = false;
        for (const std::string& port_key : port_keys) {
          if (port_key != "port") {
            Ignore(doc, absl::StrCat(port_path, ".", port_key));
            continue;
          }
          CNPV_ASSIGN_OR_RETURN(int port, AsPort(port_items[j][port_key],
                                                 port_path + ".port"));
          ports.push_back(port);
          has_port = true;
        }
        if (!has_port) {
          return MakeError(ErrorCode::kInvalidPort,
                           absl::StrCat(port_path, ": missing port"));
        }
      }
    }
  }
  return ports;
}

absl::StatusOr<IngressRule> ParseIngressRule(const YAML::Node& node,
                                             const std::string& path,
                                             CiliumPolicyDoc& doc) {
  CNPV_ASSIGN_OR_RETURN(std::vector<std::string> keys, MapKeys(node, path));
  IngressRule rule;
  for (const std::string& key : keys) {
    const std::string child = absl::StrCat(path, ".", key);
    if (key == "fromCIDRSet") {
      CNPV_ASSIGN_OR_RETURN(rule.from_cidr_set,
                            ParseCidrSet(node[key], child, doc));
    } else if (key == "fromEndpoints") {
      CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> selectors,
                            AsSequence(node[key], child));
      for (std::size_t i = 0; i < selectors.size(); ++i) {
        CNPV_ASSIGN_OR_RETURN(
            LabelMap labels,
            ParseMatchLabels(selectors[i], absl::StrCat(child, "[", i, "]"),
                             doc));
        rule.from_endpoints.push_back(std::move(labels));
      }
    } else if (key == "toPorts") {
      CNPV_ASSIGN_OR_RETURN(rule.to_ports, ParseToPorts(node[key], child, doc));
    } else {
      Ignore(doc, child);
    }
  }
  if (rule.from_cidr_set.empty() && rule.from_endpoints.empty()) {
    return Malformed(path, "ingress rule has no fromCIDRSet or fromEndpoints "
                           "source");
  }
  return rule;
}

absl::StatusOr<EgressRule> ParseEgressRule(const YAML::Node& node,
                                           const std::string& path,
                                           CiliumPolicyDoc& doc) {
  CNPV_ASSIGN_OR_RETURN(std::vector<std::string> keys, MapKeys(node, path));
  EgressRule rule;
  for (const std::string& key : keys) {
    const std::string child = absl::StrCat(path, ".", key);
    if (key == "toCIDRSet") {
      CNPV_ASSIGN_OR_RETURN(rule.to_cidr_set,
                            ParseCidrSet(node[key], child, doc));
    } else if (key == "toPorts") {
      CNPV_ASSIGN_OR_RETURN(rule.to_ports, ParseToPorts(node[key], child, doc));
    } else {
      Ignore(doc, child);
    }
  }
  if (rule.to_cidr_set.empty()) {
    return Malformed(path, "egress rule has no toCIDRSet destination");
  }
  return rule;
}

absl::StatusOr<CiliumPolicyDoc> FromNode(const YAML::Node& root) {
  if (!root.IsMap()) return Malformed("<document>", "expected a mapping");
  CiliumPolicyDoc doc;

  CNPV_ASSIGN_OR_RETURN(doc.api_version,
                        AsString(root["apiVersion"], "apiVersion"));
  if (doc.api_version != kApiVersion) {
    return MakeError(ErrorCode::kUnsupportedApiVersion,
                     absl::StrCat("apiVersion '", doc.api_version,
                                  "' (expected ", kApiVersion, ")"));
  }
  CNPV_ASSIGN_OR_RETURN(doc.kind, AsString(root["kind"], "kind"));
  if (doc.kind != kKind) {
    return MakeError(ErrorCode::kUnsupportedKind,
                     absl::StrCat("kind '", doc.kind, "' (expected ", kKind,
                                  ")"));
  }
  const YAML::Node metadata = root["metadata"];
  if (!metadata.IsMap()) return Malformed("metadata", "expected a mapping");
  CNPV_ASSIGN_OR_RETURN(doc.name, AsString(metadata["name"], "metadata.name"));
  CNPV_ASSIGN_OR_RETURN(doc.namespace_name,
                        AsString(metadata["namespace"], "metadata.namespace"));
  if (doc.name.empty()) return Malformed("metadata.name", "empty");
  if (doc.namespace_name.empty()) {
    return Malformed("metadata.namespace", "empty");
  }

  const YAML::Node spec = root["spec"];
  CNPV_ASSIGN_OR_RETURN(std::vector<std::string> spec_keys,
                        MapKeys(spec, "spec"));
  bool has_selector = false;
  for (const std::string& key : spec_keys) {
    const std::string path = absl::StrCat("spec.", key);
    if (key == "endpointSelector") {
      CNPV_ASSIGN_OR_RETURN(doc.endpoint_selector,
                            ParseMatchLabels(spec[key], path, doc));
      has_selector = true;
    } else if (key == "ingress") {
      CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> rules,
                            AsSequence(spec[key], path));
      for (std::size_t i = 0; i < rules.size(); ++i) {
        CNPV_ASSIGN_OR_RETURN(
            IngressRule rule,
            ParseIngressRule(rules[i], absl::StrCat(path, "[", i, "]"), doc));
        doc.ingress_rules.push_back(std::move(rule));
      }
    } else if (key == "egress") {
      CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> rules,
                            AsSequence(spec[key], path));
      for (std::size_t i = 0; i < rules.size(); ++i) {
        CNPV_ASSIGN_OR_RETURN(
            EgressRule rule,
            ParseEgressRule(rules[i], absl::StrCat(path, "[", i, "]"), doc));
        doc.egress_rules.push_back(std::move(rule));
      }
    } else {
      Ignore(doc, path);
    }
  }
  if (!has_selector) {
    return Malformed("spec.endpointSelector", "missing");
  }
  return doc;
}

absl::StatusOr<Namespace> NamespaceNamed(const std::string& name) {
  return Namespace::Create(name, kDefaultNamespaceId);
}

}  // namespace

absl::StatusOr<CiliumPolicyDoc> ParseCiliumPolicy(absl::string_view text) {
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> docs,
                        internal::LoadDocuments(text));
  if (docs.size() != 1) {
    return MakeError(ErrorCode::kMalformedYaml,
                     absl::StrCat("expected exactly one YAML document, found ",
                                  docs.size()));
  }
  return FromNode(docs.front());
}

absl::StatusOr<std::vector<CiliumPolicyDoc>> ParseCiliumPolicies(
    absl::string_view text) {
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> nodes,
                        internal::LoadDocuments(text));
  std::vector<CiliumPolicyDoc> docs;
  for (const YAML::Node& node : nodes) {
    if (!IsSet(node)) continue;
    CNPV_ASSIGN_OR_RETURN(CiliumPolicyDoc doc, FromNode(node));
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) {
    return MakeError(ErrorCode::kMalformedYaml, "no policy documents");
  }
  return docs;
}

std::optional<std::string> SelectorLabel(const LabelMap& labels) {
  std::vector<std::string> parts;
  if (auto it = labels.find(std::string(kAppLabelKey)); it != labels.end()) {
    parts.push_back(it->second);
  }
  for (const auto& [key, value] : labels) {
    if (key == kAppLabelKey) continue;
    parts.push_back(absl::StrCat(key, "=", value));
  }
  if (parts.empty()) return std::nullopt;
  return absl::StrJoin(parts, ",");
}

absl::StatusOr<std::vector<Policy>> ExpandRules(const CiliumPolicyDoc& doc) {
  CNPV_ASSIGN_OR_RETURN(Namespace doc_namespace,
                        NamespaceNamed(doc.namespace_name));
  const std::optional<std::string> selected_label =
      SelectorLabel(doc.endpoint_selector);

  auto selected = [&](std::optional<int> port) {
    return Endpoint::Create(std::nullopt, doc_namespace, port, selected_label);
  };
  auto ports_or_none = [](const std::vector<int>& ports) {
    std::vector<std::optional<int>> out(ports.begin(), ports.end());
    if (out.empty()) out.push_back(std::nullopt);
    return out;
  };

  std::vector<Policy> policies;
  for (std::size_t i = 0; i < doc.ingress_rules.size(); ++i) {
    const IngressRule& rule = doc.ingress_rules[i];
    const PolicyOrigin origin{.document = doc.name,
                              .rule_index = static_cast<int>(i),
                              .section = "ingress"};

    std::vector<Endpoint> peers;
    for (const Cidr& cidr : rule.from_cidr_set) {
      CNPV_ASSIGN_OR_RETURN(
          Endpoint peer,
          Endpoint::Create(cidr, std::nullopt, std::nullopt, std::nullopt));
      peers.push_back(std::move(peer));
    }
    for (const LabelMap& selector : rule.from_endpoints) {
      LabelMap labels = selector;
      std::string ns_name = doc.namespace_name;
      if (auto it = labels.find(std::string(kPodNamespaceLabelKey));
          it != labels.end()) {
        ns_name = it->second;
        labels.erase(it);
      }
      CNPV_ASSIGN_OR_RETURN(Namespace peer_ns, NamespaceNamed(ns_name));
      CNPV_ASSIGN_OR_RETURN(Endpoint peer,
                            Endpoint::Create(std::nullopt, peer_ns,
                                             std::nullopt,
                                             SelectorLabel(labels)));
      peers.push_back(std::move(peer));
    }

    for (const Endpoint& peer : peers) {
      for (std::optional<int> port : ports_or_none(rule.to_ports)) {
        CNPV_ASSIGN_OR_RETURN(Endpoint receiver, selected(port));
        policies.emplace_back(std::move(receiver), peer, Direction::kIngress,
                              origin);
      }
    }
  }

  for (std::size_t i = 0; i < doc.egress_rules.size(); ++i) {
    const EgressRule& rule = doc.egress_rules[i];
    const PolicyOrigin origin{.document = doc.name,
                              .rule_index = static_cast<int>(i),
                              .section = "egress"};
    CNPV_ASSIGN_OR_RETURN(Endpoint sender, selected(std::nullopt));
    for (const Cidr& cidr : rule.to_cidr_set) {
      for (std::optional<int> port : ports_or_none(rule.to_ports)) {
        CNPV_ASSIGN_OR_RETURN(
            Endpoint peer,
            Endpoint::Create(cidr, std::nullopt, port, std::nullopt));
        policies.emplace_back(sender, std::move(peer), Direction::kEgress,
                              origin);
      }
    }
  }

  if (policies.empty()) {
    return MakeError(ErrorCode::kEmptyExpansion,
                     absl::StrCat("policy '", doc.name,
                                  "' has no ingress or egress rules"));
  }
  return policies;
}

}  // namespace cnpverify
