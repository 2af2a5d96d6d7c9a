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

#include "cnpverify/documents.h"

#include <algorithm>
#include <initializer_list>

#include "absl/strings/cord.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "cnpverify/cilium_policy.h"
#include "cnpverify/errors.h"
#include "cnpverify/sentinel.h"
#include "cnpverify/status_macros.h"
#include "yaml_util.h"

namespace cnpverify {
namespace {

using internal::AsBool;
using internal::AsInteger;
using internal::AsPort;
using internal::AsSequence;
using internal::AsString;
using internal::IsSet;
using internal::Malformed;
using internal::MapKeys;

absl::Status CheckKeys(const YAML::Node& node, absl::string_view path,
                       std::initializer_list<absl::string_view> allowed) {
  CNPV_ASSIGN_OR_RETURN(std::vector<std::string> keys, MapKeys(node, path));
  for (const std::string& key : keys) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      return Malformed(path, absl::StrCat("unknown key '", key, "'"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Cidr> ReadCidr(const YAML::Node& node, const std::string& path) {
  CNPV_ASSIGN_OR_RETURN(std::string text, AsString(node, path));
  absl::StatusOr<Cidr> cidr = Cidr::Parse(text);
  if (!cidr.ok()) {
    return MakeError(ErrorCode::kInvalidCidrString,
                     absl::StrCat(path, ": '", text,
                                  "' is not a valid IPv4 CIDR"));
  }
  return *cidr;
}

// `status` with its message prefixed by `path`, payloads kept.
absl::Status AtPath(const absl::Status& status, absl::string_view path) {
  absl::Status out(status.code(), absl::StrCat(path, ": ", status.message()));
  status.ForEachPayload([&out](absl::string_view url, const absl::Cord& value) {
    out.SetPayload(url, value);
  });
  return out;
}

struct NamespaceSpelling {
  std::string name;
  std::uint32_t id = 0;
};

// A plain string is a namespace name with the default id, except that in
// sentinel mode "-" is the no-namespace placeholder ("-", 0).
absl::StatusOr<NamespaceSpelling> ReadNamespace(const YAML::Node& node,
                                                const std::string& path,
                                                bool sentinels) {
  if (node.IsScalar()) {
    NamespaceSpelling ns{node.Scalar(), kDefaultNamespaceId};
    if (sentinels && ns.name == kNoNamespaceName) ns.id = 0;
    return ns;
  }
  CNPV_RETURN_IF_ERROR(CheckKeys(node, path, {"name", "id"}));
  NamespaceSpelling ns;
  CNPV_ASSIGN_OR_RETURN(ns.name, AsString(node["name"], path + ".name"));
  CNPV_ASSIGN_OR_RETURN(std::int64_t id, AsInteger(node["id"], path + ".id"));
  if (id > UINT32_MAX) return Malformed(path + ".id", "out of range");
  ns.id = static_cast<std::uint32_t>(id);
  return ns;
}

// Reads the cidr/namespace/port/label fields of `node`; other keys are the
// caller's concern.
absl::StatusOr<Endpoint> ReadEndpoint(const YAML::Node& node,
                                      const std::string& path,
                                      bool sentinels) {
  const YAML::Node cidr_node = node["cidr"];
  const YAML::Node ns_node = node["namespace"];
  const YAML::Node port_node = node["port"];
  const YAML::Node label_node = node["label"];

  if (sentinels) {
    SentinelEndpoint raw{.cidr = *Cidr::Create(0, 0, 0, 0, 0),
                         .namespace_name = std::string(kNoNamespaceName),
                         .namespace_id = 0,
                         .port = 0,
                         .label = ""};
    if (IsSet(cidr_node)) {
      CNPV_ASSIGN_OR_RETURN(raw.cidr, ReadCidr(cidr_node, path + ".cidr"));
    }
    if (IsSet(ns_node)) {
      CNPV_ASSIGN_OR_RETURN(NamespaceSpelling ns,
                            ReadNamespace(ns_node, path + ".namespace", true));
      raw.namespace_name = std::move(ns.name);
      raw.namespace_id = ns.id;
    }
    if (IsSet(port_node)) {
      absl::StatusOr<std::int64_t> zero = AsInteger(port_node, path + ".port");
      if (!zero.ok() || *zero != 0) {
        CNPV_ASSIGN_OR_RETURN(raw.port, AsPort(port_node, path + ".port"));
      }
    }
    if (IsSet(label_node)) {
      CNPV_ASSIGN_OR_RETURN(raw.label, AsString(label_node, path + ".label"));
    }
    absl::StatusOr<Endpoint> endpoint = FromSentinels(raw);
    if (!endpoint.ok()) return AtPath(endpoint.status(), path);
    return endpoint;
  }

  std::optional<Cidr> cidr;
  std::optional<Namespace> ns;
  std::optional<int> port;
  std::optional<std::string> label;
  if (IsSet(cidr_node)) {
    CNPV_ASSIGN_OR_RETURN(cidr, ReadCidr(cidr_node, path + ".cidr"));
  }
  if (IsSet(ns_node)) {
    CNPV_ASSIGN_OR_RETURN(NamespaceSpelling spelling,
                          ReadNamespace(ns_node, path + ".namespace", false));
    CNPV_ASSIGN_OR_RETURN(ns, Namespace::Create(std::move(spelling.name),
                                                spelling.id));
  }
  if (IsSet(port_node)) {
    CNPV_ASSIGN_OR_RETURN(port, AsPort(port_node, path + ".port"));
  }
  if (IsSet(label_node)) {
    CNPV_ASSIGN_OR_RETURN(label, AsString(label_node, path + ".label"));
  }
  absl::StatusOr<Endpoint> endpoint =
      Endpoint::Create(cidr, ns, port, std::move(label));
  if (!endpoint.ok()) return AtPath(endpoint.status(), path);
  return endpoint;
}

absl::StatusOr<Endpoint> Resolve(const SymbolTable& symbols,
                                 const YAML::Node& node,
                                 const std::string& path) {
  CNPV_ASSIGN_OR_RETURN(std::string name, AsString(node, path));
  const Endpoint* endpoint = symbols.Find(name);
  if (endpoint == nullptr) {
    return MakeError(ErrorCode::kUnknownEndpointReference,
                     absl::StrCat(path, ": no endpoint named '", name, "'"));
  }
  return *endpoint;
}

absl::StatusOr<std::set<Endpoint>> ResolveList(const SymbolTable& symbols,
                                               const YAML::Node& node,
                                               const std::string& path) {
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> items, AsSequence(node, path));
  std::set<Endpoint> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    CNPV_ASSIGN_OR_RETURN(Endpoint endpoint,
                          Resolve(symbols, items[i],
                                  absl::StrCat(path, "[", i, "]")));
    out.insert(std::move(endpoint));
  }
  return out;
}

absl::StatusOr<AppId> ReadAppId(const YAML::Node& node,
                                const std::string& path) {
  CNPV_ASSIGN_OR_RETURN(std::int64_t id, AsInteger(node, path));
  return AppId{static_cast<std::uint64_t>(id)};
}

absl::StatusOr<bool> ReadOptionalBool(const YAML::Node& node,
                                      const std::string& path) {
  if (!IsSet(node)) return false;
  return AsBool(node, path);
}

// --- Scenario ---------------------------------------------------------------

struct ScenarioSymbols {
  SymbolTable endpoints;
  std::map<std::string, Policy, std::less<>> policies;
  const std::map<std::string, std::vector<Policy>, std::less<>>* documents;

  bool Taken(absl::string_view name) const {
    return endpoints.Contains(name) || policies.find(name) != policies.end() ||
           documents->find(name) != documents->end();
  }
};

absl::Status DuplicateSymbol(const std::string& path, absl::string_view name) {
  return MakeError(ErrorCode::kDuplicateSymbol,
                   absl::StrCat(path, ": '", name, "' is already declared"));
}

absl::StatusOr<Expectation> ReadExpectation(const YAML::Node& node,
                                            const std::string& path,
                                            Operation step_op) {
  if (!IsSet(node)) return Expectation::Ok();
  CNPV_ASSIGN_OR_RETURN(std::string text, AsString(node, path));
  const bool is_send = step_op == Operation::kSendData;
  if (text == "ok") return Expectation::Ok();
  if (is_send && text == "allow") return Expectation::Ok();
  if (is_send && text == "deny") {
    return Expectation::Violation(Operation::kTransferData);
  }
  if (text == "violation") return Expectation::Violation(step_op);

  if (absl::StartsWith(text, "violation:")) {
    std::vector<std::string> parts =
        absl::StrSplit(text.substr(absl::string_view("violation:").size()),
                       absl::MaxSplits('/', 1));
    std::optional<Operation> op = OperationFromName(parts[0]);
    const bool op_fits =
        op.has_value() &&
        (*op == step_op || (is_send && *op == Operation::kTransferData));
    if (!op_fits) {
      return Malformed(path, absl::StrCat("operation '", parts[0],
                                          "' cannot fail in this step"));
    }
    std::optional<ErrorCode> code;
    if (parts.size() == 2) {
      for (int c = 0; c <= static_cast<int>(ErrorCode::kDuplicateSymbol); ++c) {
        if (ErrorCodeName(static_cast<ErrorCode>(c)) == parts[1]) {
          code = static_cast<ErrorCode>(c);
        }
      }
      if (!code) {
        return Malformed(path,
                         absl::StrCat("unknown error code '", parts[1], "'"));
      }
    }
    return Expectation::Violation(*op, code);
  }
  return Malformed(path, absl::StrCat("unrecognized expectation '", text,
                                      "'"));
}

absl::StatusOr<ScenarioStep> ReadStep(const YAML::Node& node,
                                      const std::string& path,
                                      ScenarioSymbols& symbols) {
  CNPV_ASSIGN_OR_RETURN(std::vector<std::string> keys, MapKeys(node, path));
  if (keys.size() != 1) {
    return Malformed(path, "a step has exactly one action key");
  }
  const std::string& action = keys.front();
  const YAML::Node body = node[action];
  const std::string body_path = absl::StrCat(path, ".", action);

  if (action == "create_endpoint") {
    CNPV_RETURN_IF_ERROR(CheckKeys(
        body, body_path,
        {"name", "cidr", "namespace", "port", "label", "expect"}));
    CNPV_ASSIGN_OR_RETURN(std::string name,
                          AsString(body["name"], body_path + ".name"));
    if (symbols.Taken(name)) return DuplicateSymbol(body_path, name);
    CNPV_ASSIGN_OR_RETURN(Endpoint endpoint,
                          ReadEndpoint(body, body_path, /*sentinels=*/true));
    CNPV_ASSIGN_OR_RETURN(Expectation expected,
                          ReadExpectation(body["expect"], body_path + ".expect",
                                          Operation::kCreateEndpoint));
    symbols.endpoints.Declare(name, endpoint);
    return ScenarioStep{CreateEndpointStep{name, std::move(endpoint)},
                        expected};
  }

  if (action == "create_policy") {
    CNPV_RETURN_IF_ERROR(CheckKeys(
        body, body_path, {"name", "first", "second", "direction", "expect"}));
    CNPV_ASSIGN_OR_RETURN(std::string name,
                          AsString(body["name"], body_path + ".name"));
    if (symbols.Taken(name)) return DuplicateSymbol(body_path, name);
    CNPV_ASSIGN_OR_RETURN(Endpoint first, Resolve(symbols.endpoints,
                                                  body["first"],
                                                  body_path + ".first"));
    CNPV_ASSIGN_OR_RETURN(Endpoint second, Resolve(symbols.endpoints,
                                                   body["second"],
                                                   body_path + ".second"));
    CNPV_ASSIGN_OR_RETURN(
        std::string direction_text,
        AsString(body["direction"], body_path + ".direction"));
    absl::StatusOr<std::int64_t> direction_value =
        AsInteger(body["direction"], body_path + ".direction");
    absl::StatusOr<Direction> direction =
        direction_value.ok() ? DirectionFromInt(*direction_value)
                             : MakeError(ErrorCode::kInvalidDirection, "");
    if (!direction.ok()) {
      return MakeError(ErrorCode::kInvalidDirection,
                       absl::StrCat(body_path, ".direction: '", direction_text,
                                    "' is not 0 (ingress) or 1 (egress)"));
    }
    CNPV_ASSIGN_OR_RETURN(Expectation expected,
                          ReadExpectation(body["expect"], body_path + ".expect",
                                          Operation::kCreatePolicy));
    Policy policy(std::move(first), std::move(second), *direction);
    symbols.policies.emplace(name, policy);
    return ScenarioStep{CreatePolicyStep{name, std::move(policy)}, expected};
  }

  if (action == "deploy_application") {
    CNPV_RETURN_IF_ERROR(CheckKeys(body, body_path,
                                   {"id", "send", "listen", "receive_only",
                                    "policies", "expect"}));
    CNPV_ASSIGN_OR_RETURN(AppId id, ReadAppId(body["id"], body_path + ".id"));
    CNPV_ASSIGN_OR_RETURN(Endpoint send, Resolve(symbols.endpoints,
                                                 body["send"],
                                                 body_path + ".send"));
    DeployApplicationStep step{.id = id, .send_endpoint = std::move(send)};
    CNPV_ASSIGN_OR_RETURN(step.listen_endpoints,
                          ResolveList(symbols.endpoints, body["listen"],
                                      body_path + ".listen"));
    CNPV_ASSIGN_OR_RETURN(step.receive_only,
                          ReadOptionalBool(body["receive_only"],
                                           body_path + ".receive_only"));
    CNPV_ASSIGN_OR_RETURN(
        std::vector<YAML::Node> policy_refs,
        AsSequence(body["policies"], body_path + ".policies"));
    for (std::size_t i = 0; i < policy_refs.size(); ++i) {
      const std::string ref_path = absl::StrCat(body_path, ".policies[", i, "]");
      CNPV_ASSIGN_OR_RETURN(std::string ref, AsString(policy_refs[i], ref_path));
      if (auto it = symbols.policies.find(ref); it != symbols.policies.end()) {
        step.applied_policies.insert(it->second);
      } else if (auto doc = symbols.documents->find(ref);
                 doc != symbols.documents->end()) {
        step.applied_policies.insert(doc->second.begin(), doc->second.end());
      } else {
        return MakeError(ErrorCode::kUnknownPolicyReference,
                         absl::StrCat(ref_path, ": no policy named '", ref,
                                      "'"));
      }
    }
    CNPV_ASSIGN_OR_RETURN(Expectation expected,
                          ReadExpectation(body["expect"], body_path + ".expect",
                                          Operation::kDeployApplication));
    return ScenarioStep{std::move(step), expected};
  }

  if (action == "send_data") {
    CNPV_RETURN_IF_ERROR(
        CheckKeys(body, body_path, {"from", "to", "endpoint", "expect"}));
    CNPV_ASSIGN_OR_RETURN(AppId from,
                          ReadAppId(body["from"], body_path + ".from"));
    CNPV_ASSIGN_OR_RETURN(AppId to, ReadAppId(body["to"], body_path + ".to"));
    CNPV_ASSIGN_OR_RETURN(std::string symbol,
                          AsString(body["endpoint"], body_path + ".endpoint"));
    CNPV_ASSIGN_OR_RETURN(Endpoint endpoint,
                          Resolve(symbols.endpoints, body["endpoint"],
                                  body_path + ".endpoint"));
    SendDataStep step{from, to, std::move(endpoint), std::move(symbol)};
    CNPV_ASSIGN_OR_RETURN(Expectation expected,
                          ReadExpectation(body["expect"], body_path + ".expect",
                                          Operation::kSendData));
    return ScenarioStep{std::move(step), expected};
  }

  return Malformed(path, absl::StrCat("unknown action '", action, "'"));
}

}  // namespace

bool SymbolTable::Declare(std::string name, Endpoint endpoint) {
  if (endpoints_.contains(name)) return false;
  names_.push_back(name);
  endpoints_.emplace(std::move(name), std::move(endpoint));
  return true;
}

const Endpoint* SymbolTable::Find(absl::string_view name) const {
  auto it = endpoints_.find(name);
  return it == endpoints_.end() ? nullptr : &it->second;
}

std::optional<std::string> SymbolTable::NameOf(const Endpoint& endpoint) const {
  for (const std::string& name : names_) {
    if (endpoints_.at(name) == endpoint) return name;
  }
  return std::nullopt;
}

std::string Topology::ApplicationName(AppId id) const {
  for (const TopologyApplication& app : applications) {
    if (app.id == id && !app.name.empty()) return app.name;
  }
  return absl::StrCat(id.value);
}

absl::StatusOr<Topology> ParseTopology(absl::string_view text) {
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> docs,
                        internal::LoadDocuments(text));
  if (docs.size() != 1) {
    return MakeError(ErrorCode::kMalformedYaml,
                     "a topology is exactly one YAML document");
  }
  const YAML::Node& root = docs.front();
  CNPV_RETURN_IF_ERROR(CheckKeys(root, "<topology>",
                                 {"endpoints", "applications"}));

  Topology topology;
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> endpoints,
                        AsSequence(root["endpoints"], "endpoints"));
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    const std::string path = absl::StrCat("endpoints[", i, "]");
    CNPV_RETURN_IF_ERROR(CheckKeys(endpoints[i], path,
                                   {"name", "cidr", "namespace", "port",
                                    "label"}));
    CNPV_ASSIGN_OR_RETURN(std::string name,
                          AsString(endpoints[i]["name"], path + ".name"));
    CNPV_ASSIGN_OR_RETURN(Endpoint endpoint,
                          ReadEndpoint(endpoints[i], path, false));
    if (!topology.endpoints.Declare(name, std::move(endpoint))) {
      return DuplicateSymbol(path, name);
    }
  }

  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> apps,
                        AsSequence(root["applications"], "applications"));
  std::set<AppId> seen_ids;
  std::set<std::string> seen_names;
  for (std::size_t i = 0; i < apps.size(); ++i) {
    const std::string path = absl::StrCat("applications[", i, "]");
    CNPV_RETURN_IF_ERROR(CheckKeys(apps[i], path,
                                   {"id", "name", "send", "listen",
                                    "receive_only", "policies"}));
    CNPV_ASSIGN_OR_RETURN(AppId id, ReadAppId(apps[i]["id"], path + ".id"));
    CNPV_ASSIGN_OR_RETURN(Endpoint send, Resolve(topology.endpoints,
                                                 apps[i]["send"],
                                                 path + ".send"));
    TopologyApplication app{.id = id, .send_endpoint = std::move(send)};
    if (!seen_ids.insert(app.id).second) {
      return DuplicateSymbol(path, absl::StrCat("application id ", app.id.value));
    }
    if (IsSet(apps[i]["name"])) {
      CNPV_ASSIGN_OR_RETURN(app.name,
                            AsString(apps[i]["name"], path + ".name"));
      if (!seen_names.insert(app.name).second) {
        return DuplicateSymbol(path, app.name);
      }
    }
    CNPV_ASSIGN_OR_RETURN(app.listen_endpoints,
                          ResolveList(topology.endpoints, apps[i]["listen"],
                                      path + ".listen"));
    CNPV_ASSIGN_OR_RETURN(app.receive_only,
                          ReadOptionalBool(apps[i]["receive_only"],
                                           path + ".receive_only"));
    CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> refs,
                          AsSequence(apps[i]["policies"], path + ".policies"));
    for (std::size_t j = 0; j < refs.size(); ++j) {
      CNPV_ASSIGN_OR_RETURN(
          std::string ref,
          AsString(refs[j], absl::StrCat(path, ".policies[", j, "]")));
      app.policy_documents.push_back(std::move(ref));
    }
    topology.applications.push_back(std::move(app));
  }
  return topology;
}

absl::StatusOr<SystemState> BuildSystem(const Topology& topology,
                                        std::span<const Policy> policies) {
  SystemState state;
  for (const std::string& name : topology.endpoints.names()) {
    CNPV_RETURN_IF_ERROR(
        CreateEndpoint(state, *topology.endpoints.Find(name)).status());
  }
  std::set<std::string> documents;
  for (const Policy& policy : policies) {
    if (policy.origin()) documents.insert(policy.origin()->document);
    state.InsertPolicy(policy);
  }
  for (const TopologyApplication& app : topology.applications) {
    std::set<Policy> applied;
    for (const std::string& document : app.policy_documents) {
      if (!documents.contains(document)) {
        return MakeError(ErrorCode::kUnknownPolicyReference,
                         absl::StrCat("application ", app.id.value,
                                      " references unloaded policy '",
                                      document, "'"));
      }
      for (const Policy& policy : policies) {
        if (policy.origin() && policy.origin()->document == document) {
          applied.insert(policy);
        }
      }
    }
    CNPV_RETURN_IF_ERROR(DeployApplication(state, app.id, app.send_endpoint,
                                           app.listen_endpoints,
                                           app.receive_only,
                                           std::move(applied)));
  }
  return state;
}

std::map<std::string, std::vector<Policy>, std::less<>> GroupByDocument(
    std::span<const Policy> policies) {
  std::map<std::string, std::vector<Policy>, std::less<>> out;
  for (const Policy& policy : policies) {
    if (policy.origin()) out[policy.origin()->document].push_back(policy);
  }
  return out;
}

absl::StatusOr<ScenarioDocument> ParseScenario(absl::string_view text,
                                               const ScenarioContext& context) {
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> docs,
                        internal::LoadDocuments(text));
  if (docs.size() != 1) {
    return MakeError(ErrorCode::kMalformedYaml,
                     "a scenario is exactly one YAML document");
  }
  const YAML::Node& root = docs.front();
  CNPV_RETURN_IF_ERROR(CheckKeys(root, "<scenario>", {"mode", "steps"}));

  ScenarioDocument scenario;
  if (IsSet(root["mode"])) {
    CNPV_ASSIGN_OR_RETURN(std::string mode_text,
                          AsString(root["mode"], "mode"));
    absl::StatusOr<MatchMode> mode = ParseMatchMode(mode_text);
    if (!mode.ok()) return Malformed("mode", mode.status().message());
    scenario.mode = *mode;
  }

  ScenarioSymbols symbols{.endpoints = context.endpoints,
                          .policies = {},
                          .documents = &context.policy_documents};
  CNPV_ASSIGN_OR_RETURN(std::vector<YAML::Node> steps,
                        AsSequence(root["steps"], "steps"));
  for (std::size_t i = 0; i < steps.size(); ++i) {
    CNPV_ASSIGN_OR_RETURN(
        ScenarioStep step,
        ReadStep(steps[i], absl::StrCat("steps[", i, "]"), symbols));
    scenario.steps.push_back(std::move(step));
  }
  return scenario;
}

}  // namespace cnpverify
