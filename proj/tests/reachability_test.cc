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

#include "cnpverify/reachability.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/match.h"
#include "cnpverify/cilium_policy.h"
#include "cnpverify/documents.h"
#include "gtest/gtest.h"
#include "support/generators.h"
#include "support/oracles.h"
#include "support/testdata.h"

namespace cnpverify {
namespace {

std::vector<Policy> Load(std::vector<absl::string_view> files) {
  std::vector<Policy> out;
  for (absl::string_view file : files) {
    std::vector<Policy> p =
        *ExpandRules(*ParseCiliumPolicy(testing::ReadTestData(file)));
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

std::set<std::string> GoldenFlows() {
  std::set<std::string> flows;
  for (absl::string_view line :
       absl::StrSplit(testing::ReadTestData("ics_reachability.golden"), '\n')) {
    if (line.empty() || absl::StartsWith(line, "#")) continue;
    flows.insert(std::string(line));
  }
  return flows;
}

class IcsTopologyTest : public ::testing::Test {
 protected:
  void SetUp() override {
    topology_ = *ParseTopology(testing::ReadTestData("ics_topology.yaml"));
    state_ = *BuildSystem(topology_, Load({"ui_policy.yaml", "command_policy.yaml"}));
  }

  std::string Flow(AppId s, AppId r, const Endpoint& ep) const {
    return absl::StrCat(topology_.ApplicationName(s), " -> ",
                        topology_.ApplicationName(r), " ", ep.ToString());
  }

  Topology topology_;
  SystemState state_;
};

TEST_F(IcsTopologyTest, OracleAgreesWithGoldenAllowedFlows) {
  // Brute force: every ordered pair of distinct applications, every listen
  // endpoint of the receiver, judged by the literal precondition.
  std::set<std::string> oracle_allowed;
  size_t triples = 0;
  for (const auto& [sid, sender] : state_.applications()) {
    if (sender.receive_only) continue;
    for (const auto& [rid, receiver] : state_.applications()) {
      if (sid == rid) continue;
      for (const Endpoint& ep : receiver.listen_endpoints) {
        ++triples;
        if (testing::VdmTransferPrecondition(state_, sid, rid, ep)) {
          oracle_allowed.insert(Flow(sid, rid, ep));
        }
      }
    }
  }
  EXPECT_EQ(oracle_allowed, GoldenFlows());

  ReachabilityMatrix matrix = ComputeReachability(state_, TransferOptions{});
  EXPECT_EQ(matrix.entries.size(), triples);
  std::set<std::string> engine_allowed;
  for (const ReachabilityEntry& e : matrix.entries) {
    if (e.result.allowed()) {
      engine_allowed.insert(Flow(e.sender, e.receiver, e.endpoint));
    }
  }
  EXPECT_EQ(engine_allowed, GoldenFlows());
  EXPECT_EQ(matrix.AllowedCount(), 3u);
}

TEST_F(IcsTopologyTest, EntriesReplayThroughTransferData) {
  for (MatchMode mode : {MatchMode::kStrict, MatchMode::kSemantic}) {
    TransferOptions options{.mode = mode};
    ReachabilityMatrix matrix = ComputeReachability(state_, options);
    for (const ReachabilityEntry& e : matrix.entries) {
      SystemState copy = state_;
      TransferResult replay = TransferData(copy, e.sender, e.receiver,
                                           e.endpoint, Message::Fresh(),
                                           options);
      EXPECT_EQ(replay.allowed(), e.result.allowed());
      EXPECT_EQ(copy.TotalMessages(), e.result.allowed() ? 1u : 0u);
    }
  }
}

TEST_F(IcsTopologyTest, OneEntryPerTripleInOrder) {
  ReachabilityMatrix matrix = ComputeReachability(state_, TransferOptions{});
  for (const ReachabilityEntry& e : matrix.entries) {
    EXPECT_NE(e.sender, e.receiver);
    EXPECT_FALSE(state_.FindApplication(e.sender)->receive_only);
    EXPECT_TRUE(
        state_.FindApplication(e.receiver)->listen_endpoints.contains(e.endpoint));
  }
  EXPECT_TRUE(std::is_sorted(
      matrix.entries.begin(), matrix.entries.end(),
      [](const ReachabilityEntry& a, const ReachabilityEntry& b) {
        return std::tie(a.sender, a.receiver, a.endpoint) <
               std::tie(b.sender, b.receiver, b.endpoint);
      }));
}

TEST_F(IcsTopologyTest, StableAcrossPolicyOrder) {
  SystemState reversed =
      *BuildSystem(topology_, Load({"command_policy.yaml", "ui_policy.yaml"}));
  EXPECT_EQ(reversed, state_);
  ReachabilityMatrix a = ComputeReachability(state_, TransferOptions{});
  ReachabilityMatrix b = ComputeReachability(reversed, TransferOptions{});
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].endpoint, b.entries[i].endpoint);
    EXPECT_EQ(a.entries[i].result.allowed(), b.entries[i].result.allowed());
    EXPECT_EQ(a.entries[i].result.verdict, b.entries[i].result.verdict);
  }
}

TEST(ReachabilityTest, EmptyPolicySetAllowsNothing) {
  Topology topology =
      *ParseTopology(testing::ReadTestData("ics_topology.yaml"));
  for (TopologyApplication& app : topology.applications) {
    app.policy_documents.clear();
  }
  SystemState state = *BuildSystem(topology, {});
  ReachabilityMatrix matrix = ComputeReachability(state, TransferOptions{});
  EXPECT_FALSE(matrix.entries.empty());
  EXPECT_EQ(matrix.AllowedCount(), 0u);
}

TEST(ReachabilityTest, SingleApplicationHasNoPairs) {
  Topology topology = *ParseTopology(
      "endpoints: [{name: a, label: x}]\napplications: [{id: 1, send: a, "
      "listen: [a]}]\n");
  SystemState state = *BuildSystem(topology, {});
  EXPECT_TRUE(ComputeReachability(state, TransferOptions{}).entries.empty());
}

TEST(ReachabilityTest, RandomSystemsMatchOracle) {
  testing::Rng rng(31337);
  for (int i = 0; i < 300; ++i) {
    testing::RandomSystem system = testing::GenerateSystem(rng);
    ReachabilityMatrix matrix =
        ComputeReachability(system.state, TransferOptions{});
    for (const ReachabilityEntry& e : matrix.entries) {
      EXPECT_EQ(e.result.allowed(),
                testing::VdmTransferPrecondition(system.state, e.sender,
                                                 e.receiver, e.endpoint));
    }
  }
}

}  // namespace
}  // namespace cnpverify
