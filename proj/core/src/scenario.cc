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

#include "cnpverify/scenario.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace cnpverify {

absl::StatusOr<Endpoint> CreateEndpoint(SystemState& state, Endpoint endpoint) {
  if (state.HasEndpoint(endpoint)) {
    return MakeViolation(Operation::kCreateEndpoint,
                         ErrorCode::kDuplicateEndpoint,
                         absl::StrCat("endpoint ", endpoint.ToString(),
                                      " already exists"));
  }
  state.InsertEndpoint(endpoint);
  return endpoint;
}

absl::StatusOr<Endpoint> CreateEndpoint(SystemState& state,
                                        std::optional<Cidr> cidr,
                                        std::optional<Namespace> ns,
                                        std::optional<int> port,
                                        std::optional<std::string> label) {
  absl::StatusOr<Endpoint> endpoint = Endpoint::Create(
      std::move(cidr), std::move(ns), port, std::move(label));
  if (!endpoint.ok()) return endpoint.status();
  return CreateEndpoint(state, *std::move(endpoint));
}

absl::StatusOr<Policy> CreatePolicy(SystemState& state, Policy policy) {
  if (state.HasPolicy(policy)) {
    return MakeViolation(
        Operation::kCreatePolicy, ErrorCode::kDuplicatePolicy,
        absl::StrCat("policy ", policy.ToString(), " already exists"));
  }
  state.InsertPolicy(policy);
  return policy;
}

absl::StatusOr<Policy> CreatePolicy(SystemState& state, Endpoint first,
                                    Endpoint second, Direction direction,
                                    std::optional<PolicyOrigin> origin) {
  return CreatePolicy(state, Policy(std::move(first), std::move(second),
                                    direction, std::move(origin)));
}

absl::Status DeployApplication(SystemState& state, AppId id,
                               Endpoint send_endpoint,
                               std::set<Endpoint> listen_endpoints,
                               bool receive_only,
                               std::set<Policy> applied_policies) {
  if (state.FindApplication(id) != nullptr) {
    return MakeViolation(Operation::kDeployApplication,
                         ErrorCode::kDuplicateApplicationId,
                         absl::StrCat("application ", id.value,
                                      " is already deployed"));
  }
  state.InsertApplication(Application{
      .id = id,
      .send_endpoint = std::move(send_endpoint),
      .listen_endpoints = std::move(listen_endpoints),
      .receive_only = receive_only,
      .applied_policies = std::move(applied_policies),
  });
  return absl::OkStatus();
}

TransferResult CheckTransfer(const SystemState& state, AppId sender,
                             AppId receiver, const Endpoint& receiver_endpoint,
                             const TransferOptions& options) {
  const Application* from = state.FindApplication(sender);
  if (from == nullptr) {
    return {MakeViolation(Operation::kTransferData, ErrorCode::kSenderUnknown,
                          absl::StrCat("no application ", sender.value)),
            std::nullopt};
  }
  const Application* to = state.FindApplication(receiver);
  if (to == nullptr) {
    return {MakeViolation(Operation::kTransferData, ErrorCode::kReceiverUnknown,
                          absl::StrCat("no application ", receiver.value)),
            std::nullopt};
  }
  if (!state.HasEndpoint(receiver_endpoint)) {
    return {MakeViolation(Operation::kTransferData, ErrorCode::kEndpointUnknown,
                          absl::StrCat("endpoint ",
                                       receiver_endpoint.ToString(),
                                       " was never created")),
            std::nullopt};
  }
  if (options.check_listen &&
      !to->listen_endpoints.contains(receiver_endpoint)) {
    return {MakeViolation(Operation::kTransferData,
                          ErrorCode::kReceiverNotListening,
                          absl::StrCat("application ", receiver.value,
                                       " does not listen on ",
                                       receiver_endpoint.ToString())),
            std::nullopt};
  }
  MatchVerdict verdict = Evaluate(state.policies(), from->send_endpoint,
                                  receiver_endpoint, options.mode);
  if (!verdict.allowed) {
    return {MakeViolation(
                Operation::kTransferData, ErrorCode::kPolicyViolation,
                absl::StrCat("no policy permits ",
                             from->send_endpoint.ToString(), " -> ",
                             receiver_endpoint.ToString(), " (",
                             verdict.failed_predicates.size(),
                             " policies checked)")),
            std::move(verdict)};
  }
  return {absl::OkStatus(), std::move(verdict)};
}

TransferResult TransferData(SystemState& state, AppId sender, AppId receiver,
                            const Endpoint& receiver_endpoint, Message message,
                            const TransferOptions& options) {
  TransferResult result =
      CheckTransfer(state, sender, receiver, receiver_endpoint, options);
  if (result.allowed()) state.AppendMessage(receiver, message);
  return result;
}

TransferResult SendData(SystemState& state, AppId sender, AppId receiver,
                        const Endpoint& receiver_endpoint,
                        const TransferOptions& options) {
  const Application* from = state.FindApplication(sender);
  if (from == nullptr) {
    return {MakeViolation(Operation::kSendData, ErrorCode::kSenderUnknown,
                          absl::StrCat("no application ", sender.value)),
            std::nullopt};
  }
  if (from->receive_only) {
    return {MakeViolation(Operation::kSendData, ErrorCode::kSenderReceiveOnly,
                          absl::StrCat("application ", sender.value,
                                       " is receive-only")),
            std::nullopt};
  }
  return TransferData(state, sender, receiver, receiver_endpoint,
                      Message::Fresh(), options);
}

// --- Scenarios --------------------------------------------------------------

namespace {

struct ActionInfo {
  Operation operation;
  absl::string_view name;
};

ActionInfo InfoFor(const StepAction& action) {
  struct Visitor {
    ActionInfo operator()(const CreateEndpointStep&) const {
      return {Operation::kCreateEndpoint, "create_endpoint"};
    }
    ActionInfo operator()(const CreatePolicyStep&) const {
      return {Operation::kCreatePolicy, "create_policy"};
    }
    ActionInfo operator()(const DeployApplicationStep&) const {
      return {Operation::kDeployApplication, "deploy_application"};
    }
    ActionInfo operator()(const SendDataStep&) const {
      return {Operation::kSendData, "send_data"};
    }
  };
  return std::visit(Visitor{}, action);
}

std::string Describe(const StepAction& action) {
  struct Visitor {
    std::string operator()(const CreateEndpointStep& s) const {
      return absl::StrCat(s.symbol, " = ", s.endpoint.ToString());
    }
    std::string operator()(const CreatePolicyStep& s) const {
      return absl::StrCat(s.symbol, " = ", s.policy.ToString());
    }
    std::string operator()(const DeployApplicationStep& s) const {
      return absl::StrCat("app ", s.id.value, " send ",
                          s.send_endpoint.ToString(), " listen ",
                          s.listen_endpoints.size(), " receive_only ",
                          s.receive_only ? "true" : "false");
    }
    std::string operator()(const SendDataStep& s) const {
      return absl::StrCat(s.from.value, " -> ", s.to.value, " via ",
                          s.endpoint_symbol.empty() ? s.endpoint.ToString()
                                                    : s.endpoint_symbol);
    }
  };
  return std::visit(Visitor{}, action);
}

}  // namespace

Operation StepOperation(const StepAction& action) {
  return InfoFor(action).operation;
}

absl::string_view StepActionName(const StepAction& action) {
  return InfoFor(action).name;
}

bool Expectation::Matches(const absl::Status& actual) const {
  if (!violated.has_value()) return actual.ok();
  if (actual.ok()) return false;
  if (GetOperation(actual) != violated) return false;
  return !code.has_value() || GetErrorCode(actual) == code;
}

std::string Expectation::ToString() const {
  if (!violated.has_value()) return "ok";
  std::string text = absl::StrCat("violation:", OperationName(*violated));
  if (code.has_value()) absl::StrAppend(&text, "/", ErrorCodeName(*code));
  return text;
}

StepOutcome ScenarioRunner::Run(const ScenarioStep& step, std::size_t index) {
  StepOutcome outcome;
  outcome.index = index;
  outcome.action = std::string(StepActionName(step.action));
  outcome.description = Describe(step.action);
  outcome.expected = step.expected;

  struct Visitor {
    ScenarioRunner& runner;
    StepOutcome& outcome;

    void operator()(const CreateEndpointStep& s) const {
      outcome.actual = CreateEndpoint(runner.state_, s.endpoint).status();
    }
    void operator()(const CreatePolicyStep& s) const {
      outcome.actual = CreatePolicy(runner.state_, s.policy).status();
    }
    void operator()(const DeployApplicationStep& s) const {
      outcome.actual =
          DeployApplication(runner.state_, s.id, s.send_endpoint,
                            s.listen_endpoints, s.receive_only,
                            s.applied_policies);
    }
    void operator()(const SendDataStep& s) const {
      TransferResult result = SendData(runner.state_, s.from, s.to,
                                       s.endpoint, runner.options_);
      outcome.actual = std::move(result.status);
      outcome.verdict = std::move(result.verdict);
    }
  };
  std::visit(Visitor{*this, outcome}, step.action);
  outcome.as_expected = step.expected.Matches(outcome.actual);
  return outcome;
}

ScenarioReport RunScenario(std::span<const ScenarioStep> steps,
                           const TransferOptions& options,
                           SystemState initial) {
  ScenarioRunner runner(options, std::move(initial));
  ScenarioReport report;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    report.outcomes.push_back(runner.Run(steps[i], i));
    ++report.steps_run;
    if (!report.outcomes.back().as_expected) {
      report.aborted_at = i;
      break;
    }
  }
  report.passed = !report.aborted_at.has_value();
  return report;
}

}  // namespace cnpverify
