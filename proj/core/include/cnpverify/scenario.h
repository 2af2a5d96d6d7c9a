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
// File: scenario.h
// -----------------------------------------------------------------------------
//
// Contract-checked operations on a SystemState and a runner for scripted
// scenarios built from them.
//
// Every operation checks its precondition before touching the state. When the
// precondition fails the state is left exactly as it was and the returned
// status carries the operation name and an ErrorCode (see errors.h).

#ifndef CNPVERIFY_SCENARIO_H_
#define CNPVERIFY_SCENARIO_H_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "cnpverify/errors.h"
#include "cnpverify/match.h"
#include "cnpverify/model.h"
#include "cnpverify/system_state.h"

namespace cnpverify {

struct TransferOptions {
  MatchMode mode = MatchMode::kStrict;
  // Additionally require the receiver endpoint to be one of the receiving
  // application's listen endpoints. Off by default: the plain model only
  // requires the endpoint to exist somewhere in the system.
  bool check_listen = false;
};

// Pre: no structurally equal endpoint exists (kDuplicateEndpoint).
absl::StatusOr<Endpoint> CreateEndpoint(SystemState& state, Endpoint endpoint);
absl::StatusOr<Endpoint> CreateEndpoint(SystemState& state,
                                        std::optional<Cidr> cidr,
                                        std::optional<Namespace> ns,
                                        std::optional<int> port,
                                        std::optional<std::string> label);

// Pre: no structurally equal policy exists (kDuplicatePolicy).
absl::StatusOr<Policy> CreatePolicy(SystemState& state, Endpoint first,
                                    Endpoint second, Direction direction,
                                    std::optional<PolicyOrigin> origin = {});
absl::StatusOr<Policy> CreatePolicy(SystemState& state, Policy policy);

// Pre: no application with `id` (kDuplicateApplicationId).
// Post: the application is deployed with an empty received-data log.
absl::Status DeployApplication(SystemState& state, AppId id,
                               Endpoint send_endpoint,
                               std::set<Endpoint> listen_endpoints,
                               bool receive_only,
                               std::set<Policy> applied_policies);

struct TransferResult {
  // OK iff the message was (or would be) delivered.
  absl::Status status;
  // Present once the policy check has run, i.e. on success and on
  // kPolicyViolation.
  std::optional<MatchVerdict> verdict;

  bool allowed() const { return status.ok(); }
};

// Evaluates the TransferData precondition without modifying anything:
//
//   sender and receiver deployed      (kSenderUnknown / kReceiverUnknown)
//   receiver_endpoint in endpoints    (kEndpointUnknown)
//   [check_listen] endpoint listened  (kReceiverNotListening)
//   some policy permits
//     sender.send_endpoint -> receiver_endpoint  (kPolicyViolation)
TransferResult CheckTransfer(const SystemState& state, AppId sender,
                             AppId receiver, const Endpoint& receiver_endpoint,
                             const TransferOptions& options);

// CheckTransfer, then on success appends `message` to the receiver's log.
TransferResult TransferData(SystemState& state, AppId sender, AppId receiver,
                            const Endpoint& receiver_endpoint, Message message,
                            const TransferOptions& options);

// Pre: the sender is deployed (kSenderUnknown) and may send
// (kSenderReceiveOnly). Then transfers a fresh message.
TransferResult SendData(SystemState& state, AppId sender, AppId receiver,
                        const Endpoint& receiver_endpoint,
                        const TransferOptions& options);

// --- Scenarios --------------------------------------------------------------

struct CreateEndpointStep {
  std::string symbol;
  Endpoint endpoint;
};

struct CreatePolicyStep {
  std::string symbol;
  Policy policy;
};

struct DeployApplicationStep {
  AppId id;
  Endpoint send_endpoint;
  std::set<Endpoint> listen_endpoints;
  bool receive_only = false;
  std::set<Policy> applied_policies;
};

struct SendDataStep {
  AppId from;
  AppId to;
  Endpoint endpoint;
  // Name the endpoint was referenced by, for reports.
  std::string endpoint_symbol;
};

using StepAction = std::variant<CreateEndpointStep, CreatePolicyStep,
                                DeployApplicationStep, SendDataStep>;

// The operation a step invokes directly.
Operation StepOperation(const StepAction& action);
// "create_endpoint", "create_policy", "deploy_application" or "send_data".
absl::string_view StepActionName(const StepAction& action);

// Either "the step succeeds" or "the step fails the precondition of
// `operation`" (optionally with a specific error code).
struct Expectation {
  std::optional<Operation> violated;
  std::optional<ErrorCode> code;

  static Expectation Ok() { return {}; }
  static Expectation Violation(Operation op,
                               std::optional<ErrorCode> code = std::nullopt) {
    return {op, code};
  }

  bool Matches(const absl::Status& actual) const;
  std::string ToString() const;

  friend bool operator==(const Expectation&, const Expectation&) = default;
};

struct ScenarioStep {
  StepAction action;
  Expectation expected;
};

struct StepOutcome {
  std::size_t index = 0;
  std::string action;
  std::string description;
  Expectation expected;
  absl::Status actual;
  std::optional<MatchVerdict> verdict;
  bool as_expected = false;
};

struct ScenarioReport {
  std::size_t steps_run = 0;
  std::vector<StepOutcome> outcomes;
  bool passed = false;
  // Index of the step whose outcome was unexpected; execution stopped there.
  std::optional<std::size_t> aborted_at;
};

// Executes steps one at a time against a state it owns.
class ScenarioRunner {
 public:
  explicit ScenarioRunner(TransferOptions options,
                          SystemState initial = NewSystem())
      : options_(options), state_(std::move(initial)) {}

  StepOutcome Run(const ScenarioStep& step, std::size_t index);

  const SystemState& state() const { return state_; }

 private:
  TransferOptions options_;
  SystemState state_;
};

// Runs `steps` in order. Steps expected to fail are checked and skipped over;
// the first unexpected outcome aborts the run.
ScenarioReport RunScenario(std::span<const ScenarioStep> steps,
                           const TransferOptions& options,
                           SystemState initial = NewSystem());

}  // namespace cnpverify

#endif  // CNPVERIFY_SCENARIO_H_
