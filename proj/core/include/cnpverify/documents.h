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
// File: documents.h
// -----------------------------------------------------------------------------
//
// Topology and scenario documents (YAML).
//
// Topology:
//
//   endpoints:
//     - name: webui
//       namespace: NS-UI        # or {name: NS-UI, id: 1}; plain names get id 1
//       port: 443
//       label: WebUI
//   applications:
//     - id: 2
//       name: WebUI
//       send: webui-out
//       listen: [webui]
//       receive_only: false
//       policies: [UIPolicy]     # CiliumNetworkPolicy names, for reporting
//
// Scenario:
//
//   mode: strict                 # optional: strict | semantic
//   steps:
//     - create_endpoint: {name: ep1, cidr: 10.28.1.2/30, namespace: "-",
//                         port: 0, label: ""}
//     - create_policy: {name: pol, first: ep2, second: ep1, direction: 0}
//     - deploy_application: {id: 1, send: ep1, listen: [], receive_only: false,
//                            policies: [pol]}
//     - send_data: {from: 1, to: 2, endpoint: ep2, expect: allow}
//
// deploy_application may also list the names of loaded policy documents (see
// ScenarioContext) instead of, or alongside, create_policy symbols.
//
// Scenario endpoints accept the placeholder spellings of sentinel.h (cidr
// 0.0.0.0/0, namespace "-" with id 0, port 0, label "") and omitted fields,
// all meaning "absent". Every step may carry `expect`:
//
//   ok | allow                    the step succeeds
//   deny                          send_data only: TransferData precondition
//                                 fails
//   violation                     the step's own operation precondition fails
//   violation:<Operation>[/<ErrorCode>]

#ifndef CNPVERIFY_DOCUMENTS_H_
#define CNPVERIFY_DOCUMENTS_H_

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "cnpverify/match.h"
#include "cnpverify/model.h"
#include "cnpverify/scenario.h"
#include "cnpverify/system_state.h"

namespace cnpverify {

// Symbolic endpoint names in declaration order.
class SymbolTable {
 public:
  // False if `name` is already declared.
  bool Declare(std::string name, Endpoint endpoint);
  const Endpoint* Find(absl::string_view name) const;
  bool Contains(absl::string_view name) const { return Find(name) != nullptr; }

  // Declared names, in declaration order.
  const std::vector<std::string>& names() const { return names_; }
  // Reverse lookup; the first name declared for `endpoint`, if any.
  std::optional<std::string> NameOf(const Endpoint& endpoint) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, Endpoint, std::less<>> endpoints_;
};

struct TopologyApplication {
  AppId id;
  std::string name;
  Endpoint send_endpoint;
  std::set<Endpoint> listen_endpoints;
  bool receive_only = false;
  std::vector<std::string> policy_documents;
};

struct Topology {
  SymbolTable endpoints;
  std::vector<TopologyApplication> applications;

  // Application name for `id`, or its number if unnamed.
  std::string ApplicationName(AppId id) const;
};

// Errors: kMalformedYaml, kDuplicateSymbol, kUnknownEndpointReference,
// kInvalidCidrString, kInvalidPort, kInvalidEndpoint.
absl::StatusOr<Topology> ParseTopology(absl::string_view text);

// Creates every topology endpoint, inserts `policies` (structural duplicates
// collapse), then deploys every application. Each application's applied
// policies are those whose origin document it lists.
//
// Errors: kDuplicateEndpoint, kUnknownPolicyReference.
absl::StatusOr<SystemState> BuildSystem(const Topology& topology,
                                        std::span<const Policy> policies);

struct ScenarioDocument {
  std::optional<MatchMode> mode;
  std::vector<ScenarioStep> steps;
};

// Names a scenario may reference without declaring them.
struct ScenarioContext {
  // Typically the endpoints of a topology.
  SymbolTable endpoints;
  // Loaded policy documents by name. A deploy_application step listing a
  // document name applies every policy expanded from it.
  std::map<std::string, std::vector<Policy>, std::less<>> policy_documents;
};

// Groups `policies` by origin document; policies without an origin are
// skipped.
std::map<std::string, std::vector<Policy>, std::less<>> GroupByDocument(
    std::span<const Policy> policies);

// Context names may be referenced but not redeclared.
//
// Errors: kMalformedYaml, kDuplicateSymbol, kUnknownEndpointReference,
// kUnknownPolicyReference, kInvalidDirection, kInvalidCidrString,
// kInvalidPort, kInvalidEndpoint.
absl::StatusOr<ScenarioDocument> ParseScenario(
    absl::string_view text, const ScenarioContext& context = {});

}  // namespace cnpverify

#endif  // CNPVERIFY_DOCUMENTS_H_
