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
// Acceptance suite. Prints one PASS/FAIL line per criterion with its measured
// runtime and limit, and exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "cnpverify/cidr.h"
#include "cnpverify/cilium_policy.h"
#include "cnpverify/documents.h"
#include "cnpverify/errors.h"
#include "cnpverify/reachability.h"
#include "cnpverify/scenario.h"
#include "support/generators.h"
#include "support/oracles.h"
#include "support/testdata.h"

namespace cnpverify {
namespace {

using testing::Octets;
using testing::Rng;

// Number of random systems shared by criteria 5 to 7.
constexpr int kCorpusSize = 1000;
constexpr uint64_t kCorpusSeed = 20260101;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool condition, absl::string_view what) {
    if (!condition && pass) {
      pass = false;
      detail = std::string(what);
    }
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

ScenarioDocument LoadScenario(absl::string_view file) {
  absl::StatusOr<ScenarioDocument> doc =
      ParseScenario(testing::ReadTestData(file));
  if (!doc.ok()) {
    std::fprintf(stderr, "%s: %s\n", std::string(file).c_str(),
                 doc.status().ToString().c_str());
    std::abort();
  }
  return *std::move(doc);
}

std::vector<Policy> Expand(absl::string_view file) {
  absl::StatusOr<CiliumPolicyDoc> doc =
      ParseCiliumPolicy(testing::ReadTestData(file));
  if (!doc.ok()) return {};
  absl::StatusOr<std::vector<Policy>> policies = ExpandRules(*doc);
  return policies.ok() ? *policies : std::vector<Policy>{};
}

// Runs every step but the last, then the last one, reporting the state
// before and after it.
struct LastStep {
  StepOutcome outcome;
  SystemState before;
  SystemState after;
};

LastStep RunToLast(const ScenarioDocument& doc) {
  ScenarioRunner runner(TransferOptions{.mode = MatchMode::kStrict});
  for (size_t i = 0; i + 1 < doc.steps.size(); ++i) {
    runner.Run(doc.steps[i], i);
  }
  LastStep last;
  last.before = runner.state();
  last.outcome = runner.Run(doc.steps.back(), doc.steps.size() - 1);
  last.after = runner.state();
  return last;
}

Outcome GoldenScenario(absl::string_view allowed_file,
                       absl::string_view violation_file, AppId receiver) {
  Outcome o;
  const ScenarioDocument ok_doc = LoadScenario(allowed_file);
  ScenarioReport report = RunScenario(ok_doc.steps, TransferOptions{});
  o.Require(report.passed, "allowed scenario did not run as expected");
  LastStep ok = RunToLast(ok_doc);
  o.Require(ok.outcome.actual.ok(), "final send was not allowed");
  o.Require(ok.after.app_data().at(receiver).size() == 1,
            "receiver log length is not 1");

  const ScenarioDocument bad_doc = LoadScenario(violation_file);
  LastStep bad = RunToLast(bad_doc);
  o.Require(GetOperation(bad.outcome.actual) == Operation::kTransferData &&
                GetErrorCode(bad.outcome.actual) == ErrorCode::kPolicyViolation,
            "violation scenario did not fail TransferData with "
            "PolicyViolation");
  o.Require(bad.before == bad.after, "state changed on denied transfer");
  o.Require(RunScenario(bad_doc.steps, TransferOptions{}).passed,
            "violation scenario expectations not met");
  if (o.pass) {
    o.detail = absl::StrCat("allow with log length 1; denial ",
                            ErrorCodeName(*GetErrorCode(bad.outcome.actual)),
                            " on TransferData, state unchanged");
  }
  return o;
}

const Policy* ScenarioPolicy(const ScenarioDocument& doc) {
  for (const ScenarioStep& step : doc.steps) {
    if (const auto* p = std::get_if<CreatePolicyStep>(&step.action)) {
      return &p->policy;
    }
  }
  return nullptr;
}

Outcome TranslationFidelity() {
  Outcome o;
  const std::vector<Policy> ui = Expand("ui_policy.yaml");
  const ScenarioDocument s1 = LoadScenario("client_webui.yaml");
  o.Require(ui.size() == 1, "client document did not yield exactly 1 policy");
  o.Require(!ui.empty() && ui[0].direction() == Direction::kIngress,
            "client policy is not ingress");
  o.Require(!ui.empty() && ScenarioPolicy(s1) && ui[0] == *ScenarioPolicy(s1),
            "client policy differs from CreatePolicy(ep2, ep1, 0)");

  const std::vector<Policy> command = Expand("command_policy.yaml");
  const ScenarioDocument s2 = LoadScenario("webui_command.yaml");
  o.Require(command.size() == 2,
            "command document did not yield exactly 2 policies");
  int egress = 0;
  for (const Policy& p : command) {
    if (p.direction() != Direction::kEgress) continue;
    ++egress;
    o.Require(ScenarioPolicy(s2) && p == *ScenarioPolicy(s2),
              "egress policy differs from CreatePolicy(ep2, ep1, 1)");
  }
  o.Require(egress == 1, "command document has no single egress policy");
  if (o.pass) {
    o.detail = "1 ingress and 2 policies, both structurally equal to the "
               "scenario policies";
  }
  return o;
}

Octets OctetsOf(const Cidr& c) {
  return {c.octets()[0], c.octets()[1], c.octets()[2], c.octets()[3]};
}

Outcome CidrOracle() {
  Outcome o;
  long exhaustive = 0;
  long disagreements = 0;
  // Every block 10.28.1.d/p with p >= 24 against every host of
  // 10.28.0.0-10.28.2.255.
  std::vector<Cidr> hosts;
  for (int c = 0; c <= 2; ++c) {
    for (int x = 0; x <= 255; ++x) hosts.push_back(*Cidr::Create(10, 28, c, x, 32));
  }
  for (int prefix = 24; prefix <= 32; ++prefix) {
    for (int d = 0; d <= 255; ++d) {
      const Cidr block = *Cidr::Create(10, 28, 1, d, prefix);
      const std::vector<Octets> members =
          testing::EnumerateBlock(OctetsOf(block), prefix);
      const std::set<Octets> member_set(members.begin(), members.end());
      for (const Cidr& host : hosts) {
        const bool expected = member_set.contains(OctetsOf(host));
        const bool actual = CidrContains(block, host) == Containment::kInside;
        ++exhaustive;
        if (expected != actual) ++disagreements;
      }
    }
  }

  Rng rng(424242);
  long random_pairs = 0;
  for (int i = 0; i < 20000; ++i) {
    const Cidr block = testing::RandomCidr(rng, 0, 23);
    Cidr address = testing::RandomCidr(rng, 24, 32);
    if (testing::Coin(rng)) {
      // Same network, random host part, so both outcomes are exercised.
      const uint32_t host = static_cast<uint32_t>(rng()) & ~block.mask();
      address = Cidr::Host(block.network() | host);
    }
    std::optional<bool> expected = testing::BitwiseContains(
        OctetsOf(block), block.prefix_length(), OctetsOf(address),
        address.prefix_length());
    const Containment actual = CidrContains(block, address);
    ++random_pairs;
    if (!expected || *expected != (actual == Containment::kInside)) {
      ++disagreements;
    }
  }
  // Mid-size blocks are small enough to enumerate as well.
  for (int i = 0; i < 200; ++i) {
    const Cidr block = testing::RandomCidr(rng, 16, 23);
    const Cidr address =
        Cidr::Host(block.network() ^ (static_cast<uint32_t>(rng()) & 0x1FFFFu));
    const bool expected = testing::EnumeratedContains(
        OctetsOf(block), block.prefix_length(), OctetsOf(address));
    ++random_pairs;
    if (expected != (CidrContains(block, address) == Containment::kInside)) {
      ++disagreements;
    }
  }
  o.Require(random_pairs >= 10000, "fewer than 10000 random pairs");
  o.Require(disagreements == 0,
            absl::StrCat(disagreements, " disagreements with the oracle"));
  o.detail = absl::StrCat(exhaustive, " exhaustive + ", random_pairs,
                          " random pairs, ", disagreements, " disagreements");
  return o;
}

std::vector<testing::RandomSystem> Corpus() {
  Rng rng(kCorpusSeed);
  std::vector<testing::RandomSystem> corpus;
  corpus.reserve(kCorpusSize);
  for (int i = 0; i < kCorpusSize; ++i) {
    corpus.push_back(testing::GenerateSystem(rng));
  }
  return corpus;
}

// Calls `f(sender, receiver, rep)` for every combination of candidate ids and
// pool endpoints.
template <typename F>
void ForEachQuery(const testing::RandomSystem& system, F f) {
  for (AppId s : system.ids) {
    for (AppId r : system.ids) {
      for (const Endpoint& rep : system.pool) f(s, r, rep);
    }
  }
}

Outcome EngineVsPrecondition() {
  Outcome o;
  long queries = 0, allowed = 0, disagreements = 0;
  for (const testing::RandomSystem& system : Corpus()) {
    ForEachQuery(system, [&](AppId s, AppId r, const Endpoint& rep) {
      SystemState copy = system.state;
      TransferResult result = TransferData(copy, s, r, rep, Message::Fresh(),
                                           TransferOptions{});
      const bool oracle =
          testing::VdmTransferPrecondition(system.state, s, r, rep);
      ++queries;
      allowed += result.allowed();
      if (result.allowed() != oracle) ++disagreements;
    });
  }
  o.Require(disagreements == 0,
            absl::StrCat(disagreements, " disagreements with the precondition"));
  o.Require(allowed > 0 && allowed < queries,
            "corpus does not exercise both outcomes");
  o.detail = absl::StrCat(kCorpusSize, " systems, ", queries, " transfers (",
                          allowed, " allowed), ", disagreements,
                          " disagreements");
  return o;
}

Outcome DenyByDefaultAndMonotonicity() {
  Outcome o;
  Rng rng(kCorpusSeed + 1);
  long empty_checks = 0, monotone_checks = 0, violations = 0;
  for (const testing::RandomSystem& system : Corpus()) {
    const testing::RandomSystem bare = testing::WithoutPolicies(system);
    ForEachQuery(bare, [&](AppId s, AppId r, const Endpoint& rep) {
      ++empty_checks;
      if (CheckTransfer(bare.state, s, r, rep, TransferOptions{}).allowed()) {
        ++violations;
      }
    });

    testing::RandomSystem grown = system;
    for (int step = 0; step < 3; ++step) {
      const SystemState before = grown.state;
      grown.state.InsertPolicy(testing::RandomPolicyFor(rng, grown));
      for (MatchMode mode : {MatchMode::kStrict, MatchMode::kSemantic}) {
        ForEachQuery(grown, [&](AppId s, AppId r, const Endpoint& rep) {
          const TransferOptions options{.mode = mode};
          if (!CheckTransfer(before, s, r, rep, options).allowed()) return;
          ++monotone_checks;
          if (!CheckTransfer(grown.state, s, r, rep, options).allowed()) {
            ++violations;
          }
        });
      }
    }
  }
  o.Require(violations == 0, absl::StrCat(violations, " property violations"));
  o.Require(monotone_checks > 0, "no allowed transfers to check");
  o.detail = absl::StrCat(empty_checks, " empty-policy denials, ",
                          monotone_checks, " allow-preservation checks, ",
                          violations, " violations");
  return o;
}

Outcome FrameProperty() {
  Outcome o;
  long denied = 0, changed = 0;
  for (const testing::RandomSystem& system : Corpus()) {
    ForEachQuery(system, [&](AppId s, AppId r, const Endpoint& rep) {
      for (bool via_send : {false, true}) {
        SystemState state = system.state;
        TransferResult result =
            via_send ? SendData(state, s, r, rep, TransferOptions{})
                     : TransferData(state, s, r, rep, Message::Fresh(),
                                    TransferOptions{});
        if (result.allowed()) continue;
        ++denied;
        if (!(state == system.state)) ++changed;
      }
    });
  }
  o.Require(changed == 0, absl::StrCat(changed, " denied transfers changed state"));
  o.Require(denied > 0, "no denied transfers in corpus");
  o.detail = absl::StrCat(denied, " denied SendData/TransferData calls, ",
                          changed, " changed the state");
  return o;
}

Outcome IcsTopologyReachability() {
  Outcome o;
  std::set<std::string> golden;
  for (absl::string_view line : absl::StrSplit(
           testing::ReadTestData("ics_reachability.golden"), '\n')) {
    if (!line.empty() && !absl::StartsWith(line, "#")) {
      golden.insert(std::string(line));
    }
  }
  absl::StatusOr<Topology> topology =
      ParseTopology(testing::ReadTestData("ics_topology.yaml"));
  std::vector<Policy> policies = Expand("ui_policy.yaml");
  for (const Policy& p : Expand("command_policy.yaml")) policies.push_back(p);
  absl::StatusOr<SystemState> state =
      topology.ok() ? BuildSystem(*topology, policies)
                    : absl::StatusOr<SystemState>(topology.status());
  if (!state.ok()) {
    o.Require(false, state.status().ToString());
    return o;
  }
  ReachabilityMatrix matrix = ComputeReachability(*state, TransferOptions{});
  std::set<std::string> engine, oracle;
  for (const ReachabilityEntry& e : matrix.entries) {
    const std::string flow = absl::StrCat(
        topology->ApplicationName(e.sender), " -> ",
        topology->ApplicationName(e.receiver), " ", e.endpoint.ToString());
    if (e.result.allowed()) engine.insert(flow);
    if (testing::VdmTransferPrecondition(*state, e.sender, e.receiver,
                                         e.endpoint)) {
      oracle.insert(flow);
    }
  }
  o.Require(golden.size() == 3, "golden file does not list 3 flows");
  o.Require(oracle == golden, "oracle disagrees with golden flows");
  o.Require(engine == golden, "engine disagrees with golden flows");
  o.detail = absl::StrCat(engine.size(), " of ", matrix.entries.size(),
                          " triples allowed, matching oracle and golden file");
  return o;
}

}  // namespace
}  // namespace cnpverify

int main() {
  using cnpverify::Criterion;
  using cnpverify::Outcome;
  const std::vector<Criterion> criteria = {
      {"AC1", "client scenario golden", 1.0,
       [] {
         return cnpverify::GoldenScenario("client_webui.yaml",
                                          "client_webui_violation.yaml",
                                          cnpverify::AppId{2});
       }},
      {"AC2", "command scenario golden", 1.0,
       [] {
         return cnpverify::GoldenScenario("webui_command.yaml",
                                          "webui_command_violation.yaml",
                                          cnpverify::AppId{1});
       }},
      {"AC3", "translation fidelity", 1.0, cnpverify::TranslationFidelity},
      {"AC4", "cidr containment oracle", 10.0, cnpverify::CidrOracle},
      {"AC5", "strict engine vs precondition oracle", 30.0,
       cnpverify::EngineVsPrecondition},
      {"AC6", "deny-by-default and monotonicity", 30.0,
       cnpverify::DenyByDefaultAndMonotonicity},
      {"AC7", "frame property", 30.0, cnpverify::FrameProperty},
      {"AC8", "control-system reachability", 1.0,
       cnpverify::IcsTopologyReachability},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = c.run();
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (seconds >= c.limit_seconds) {
      outcome.pass = false;
      outcome.detail += " (over time limit)";
    }
    failures += !outcome.pass;
    std::printf("%s %s: %s [%.3fs, limit %.0fs] %s\n", c.id.c_str(),
                outcome.pass ? "PASS" : "FAIL", c.title.c_str(), seconds,
                c.limit_seconds, outcome.detail.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
