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

#include "absl/strings/str_cat.h"
#include "cnpverify/cilium_policy.h"
#include "cnpverify/errors.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "support/testdata.h"

namespace cnpverify {
namespace {

using ::testing::ElementsAre;

std::vector<Policy> PaperPolicies() {
  std::vector<Policy> out;
  for (absl::string_view file : {"ui_policy.yaml", "command_policy.yaml"}) {
    std::vector<Policy> p =
        *ExpandRules(*ParseCiliumPolicy(testing::ReadTestData(file)));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

TEST(TopologyTest, ParsesIcsSystem) {
  absl::StatusOr<Topology> topology =
      ParseTopology(testing::ReadTestData("ics_topology.yaml"));
  ASSERT_TRUE(topology.ok()) << topology.status();
  EXPECT_EQ(topology->applications.size(), 8u);
  EXPECT_EQ(topology->endpoints.names().size(), 10u);
  EXPECT_EQ(topology->ApplicationName(AppId{5}), "Command");
  EXPECT_EQ(topology->ApplicationName(AppId{42}), "42");
  const Endpoint* https = topology->endpoints.Find("webui-https");
  ASSERT_NE(https, nullptr);
  EXPECT_EQ(https->port(), 443);
  EXPECT_EQ(https->ns()->id(), kDefaultNamespaceId);
  EXPECT_EQ(topology->endpoints.NameOf(*https), "webui-https");
}

TEST(TopologyTest, BuildSystemAppliesPoliciesByDocument) {
  Topology topology =
      *ParseTopology(testing::ReadTestData("ics_topology.yaml"));
  absl::StatusOr<SystemState> state = BuildSystem(topology, PaperPolicies());
  ASSERT_TRUE(state.ok()) << state.status();
  EXPECT_EQ(state->policies().size(), 3u);
  EXPECT_EQ(state->endpoints().size(), 10u);
  EXPECT_EQ(state->FindApplication(AppId{2})->applied_policies.size(), 1u);
  EXPECT_EQ(state->FindApplication(AppId{5})->applied_policies.size(), 2u);
  EXPECT_TRUE(state->FindApplication(AppId{7})->receive_only);
  EXPECT_TRUE(state->CheckInvariants().ok());
}

TEST(TopologyTest, BuildSystemNeedsReferencedDocuments) {
  Topology topology =
      *ParseTopology(testing::ReadTestData("ics_topology.yaml"));
  absl::StatusOr<SystemState> state = BuildSystem(topology, {});
  ASSERT_FALSE(state.ok());
  EXPECT_EQ(GetErrorCode(state.status()), ErrorCode::kUnknownPolicyReference);
}

TEST(TopologyTest, Errors) {
  struct Case {
    const char* text;
    ErrorCode code;
  };
  for (const Case& c : std::vector<Case>{
           {"endpoints: [{name: a, label: x}, {name: a, label: y}]",
            ErrorCode::kDuplicateSymbol},
           {"endpoints: [{name: a}]", ErrorCode::kInvalidEndpoint},
           {"endpoints: [{name: a, port: 0}]", ErrorCode::kInvalidPort},
           {"endpoints: [{name: a, cidr: 1.2.3/8}]",
            ErrorCode::kInvalidCidrString},
           {"applications: [{id: 1, send: nope}]",
            ErrorCode::kUnknownEndpointReference},
           {"endpoints: [{name: a, label: x}]\n"
            "applications: [{id: 1, send: a}, {id: 1, send: a}]",
            ErrorCode::kDuplicateSymbol},
           {"endpoints: [{name: a, label: x, colour: red}]",
            ErrorCode::kMalformedYaml},
           {"[unclosed", ErrorCode::kMalformedYaml},
       }) {
    absl::StatusOr<Topology> t = ParseTopology(c.text);
    ASSERT_FALSE(t.ok()) << c.text;
    EXPECT_EQ(GetErrorCode(t.status()), c.code) << c.text << "\n" << t.status();
  }
}

TEST(ScenarioDocumentTest, ParsesSentinelEndpoints) {
  absl::StatusOr<ScenarioDocument> doc =
      ParseScenario(testing::ReadTestData("client_webui.yaml"));
  ASSERT_TRUE(doc.ok()) << doc.status();
  EXPECT_EQ(doc->mode, MatchMode::kStrict);
  ASSERT_EQ(doc->steps.size(), 6u);
  const auto& ep1 = std::get<CreateEndpointStep>(doc->steps[0].action);
  EXPECT_EQ(ep1.symbol, "ep1");
  EXPECT_EQ(ep1.endpoint, *Endpoint::Create(*Cidr::Parse("10.28.1.2/30"),
                                            std::nullopt, std::nullopt,
                                            std::nullopt));
  const auto& ep2 = std::get<CreateEndpointStep>(doc->steps[1].action);
  EXPECT_FALSE(ep2.endpoint.cidr());
  const auto& send = std::get<SendDataStep>(doc->steps[5].action);
  EXPECT_EQ(send.from, AppId{1});
  EXPECT_EQ(send.endpoint, ep2.endpoint);
  EXPECT_EQ(doc->steps[5].expected, Expectation::Ok());
}

TEST(ScenarioDocumentTest, ExpectationSpellings) {
  constexpr absl::string_view kHead =
      "steps:\n"
      "  - create_endpoint: {name: e, label: x}\n"
      "  - send_data: {from: 1, to: 2, endpoint: e, expect: ";
  auto parse = [&](absl::string_view expect) {
    return ParseScenario(absl::StrCat(kHead, expect, "}\n"));
  };
  EXPECT_EQ(parse("allow")->steps[1].expected, Expectation::Ok());
  EXPECT_EQ(parse("deny")->steps[1].expected,
            Expectation::Violation(Operation::kTransferData));
  EXPECT_EQ(parse("violation")->steps[1].expected,
            Expectation::Violation(Operation::kSendData));
  EXPECT_EQ(parse("\"violation:SendData/SenderReceiveOnly\"")->steps[1].expected,
            Expectation::Violation(Operation::kSendData,
                                   ErrorCode::kSenderReceiveOnly));
  EXPECT_FALSE(parse("\"violation:CreatePolicy\"").ok());
  EXPECT_FALSE(parse("\"violation:TransferData/Nope\"").ok());
  EXPECT_FALSE(parse("maybe").ok());
}

TEST(ScenarioDocumentTest, SymbolErrors) {
  struct Case {
    const char* text;
    ErrorCode code;
  };
  for (const Case& c : std::vector<Case>{
           {"steps: [{create_endpoint: {name: e, label: x}},"
            " {create_endpoint: {name: e, label: y}}]",
            ErrorCode::kDuplicateSymbol},
           {"steps: [{create_policy: {name: p, first: a, second: b,"
            " direction: 0}}]",
            ErrorCode::kUnknownEndpointReference},
           {"steps: [{create_endpoint: {name: e, label: x}},"
            " {create_policy: {name: p, first: e, second: e, direction: 2}}]",
            ErrorCode::kInvalidDirection},
           {"steps: [{create_endpoint: {name: e, label: x}},"
            " {deploy_application: {id: 1, send: e, policies: [q]}}]",
            ErrorCode::kUnknownPolicyReference},
           {"steps: [{create_endpoint: {name: e, cidr: 0.0.0.0/0,"
            " namespace: '-', port: 0, label: ''}}]",
            ErrorCode::kInvalidEndpoint},
           {"steps: [{fly: {}}]", ErrorCode::kMalformedYaml},
           {"mode: fuzzy\nsteps: []", ErrorCode::kMalformedYaml},
       }) {
    absl::StatusOr<ScenarioDocument> doc = ParseScenario(c.text);
    ASSERT_FALSE(doc.ok()) << c.text;
    EXPECT_EQ(GetErrorCode(doc.status()), c.code) << c.text << "\n"
                                                  << doc.status();
  }
}

TEST(ScenarioDocumentTest, ContextProvidesEndpointsAndDocuments) {
  Topology topology =
      *ParseTopology(testing::ReadTestData("ics_topology.yaml"));
  std::vector<Policy> policies = PaperPolicies();
  ScenarioContext context{.endpoints = topology.endpoints,
                          .policy_documents = GroupByDocument(policies)};
  absl::StatusOr<ScenarioDocument> doc = ParseScenario(
      "steps:\n"
      "  - deploy_application: {id: 9, send: webui, policies: "
      "[Command-Policy]}\n"
      "  - send_data: {from: 9, to: 5, endpoint: command}\n",
      context);
  ASSERT_TRUE(doc.ok()) << doc.status();
  EXPECT_EQ(std::get<DeployApplicationStep>(doc->steps[0].action)
                .applied_policies.size(),
            2u);
  absl::StatusOr<ScenarioDocument> clash = ParseScenario(
      "steps: [{create_endpoint: {name: UIPolicy, label: x}}]", context);
  EXPECT_EQ(GetErrorCode(clash.status()), ErrorCode::kDuplicateSymbol);
}

}  // namespace
}  // namespace cnpverify
