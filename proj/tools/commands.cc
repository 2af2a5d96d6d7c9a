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

#include "commands.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "cnpverify/cidr.h"
#include "cnpverify/cilium_policy.h"
#include "cnpverify/documents.h"
#include "cnpverify/errors.h"
#include "cnpverify/reachability.h"
#include "cnpverify/scenario.h"
#include "cnpverify/serialize.h"
#include "cnpverify/status_macros.h"
#include "cnpverify/system_state.h"
#include "nlohmann/json.hpp"

namespace cnpverify::cli {
namespace {

using nlohmann::json;

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat(path, ": cannot open"));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat(path, ": read error"));
  return buffer.str();
}

absl::Status InFile(const std::string& path, const absl::Status& status) {
  absl::Status out(status.code(), absl::StrCat(path, ": ", status.message()));
  status.ForEachPayload([&out](absl::string_view url, const absl::Cord& value) {
    out.SetPayload(url, value);
  });
  return out;
}

auto OriginKey(const Policy& policy) {
  const std::optional<PolicyOrigin>& origin = policy.origin();
  return std::make_tuple(origin.has_value(),
                         origin ? origin->document : std::string(),
                         origin ? origin->section : std::string(),
                         origin ? origin->rule_index : 0);
}

// Expands every document of every file. The result is sorted so that, among
// structurally equal policies, the one with the smallest origin comes first
// regardless of file order.
absl::StatusOr<std::vector<Policy>> LoadPolicies(
    const std::vector<std::string>& files, std::ostream& err) {
  std::vector<Policy> policies;
  for (const std::string& file : files) {
    CNPV_ASSIGN_OR_RETURN(std::string text, ReadFile(file));
    absl::StatusOr<std::vector<CiliumPolicyDoc>> docs =
        ParseCiliumPolicies(text);
    if (!docs.ok()) return InFile(file, docs.status());
    for (const CiliumPolicyDoc& doc : *docs) {
      for (const std::string& warning : doc.warnings) {
        err << file << ": warning: " << warning << "\n";
      }
      absl::StatusOr<std::vector<Policy>> expanded = ExpandRules(doc);
      if (!expanded.ok()) return InFile(file, expanded.status());
      policies.insert(policies.end(), expanded->begin(), expanded->end());
    }
  }
  std::stable_sort(policies.begin(), policies.end(),
                   [](const Policy& a, const Policy& b) {
                     if (a != b) return a < b;
                     return OriginKey(a) < OriginKey(b);
                   });
  return policies;
}

absl::StatusOr<Topology> LoadTopology(const std::string& file) {
  CNPV_ASSIGN_OR_RETURN(std::string text, ReadFile(file));
  absl::StatusOr<Topology> topology = ParseTopology(text);
  if (!topology.ok()) return InFile(file, topology.status());
  return topology;
}

std::string FormatOrigin(const Policy& policy) {
  if (!policy.origin()) return policy.ToString();
  const PolicyOrigin& o = *policy.origin();
  return absl::StrCat(o.document, " ", o.section, "[", o.rule_index, "]");
}

std::string FormatStatus(const absl::Status& status) {
  if (status.ok()) return "ok";
  std::optional<Operation> op = GetOperation(status);
  std::optional<ErrorCode> code = GetErrorCode(status);
  if (!op && !code) return std::string(absl::StatusCodeToString(status.code()));
  std::string out = "violation";
  if (op) absl::StrAppend(&out, ":", OperationName(*op));
  if (code) absl::StrAppend(&out, "/", ErrorCodeName(*code));
  return out;
}

json StatusToJson(const absl::Status& status) {
  json j = {{"ok", status.ok()}};
  if (status.ok()) return j;
  if (std::optional<Operation> op = GetOperation(status)) {
    j["operation"] = std::string(OperationName(*op));
  }
  if (std::optional<ErrorCode> code = GetErrorCode(status)) {
    j["code"] = std::string(ErrorCodeName(*code));
  }
  j["message"] = std::string(status.message());
  return j;
}

json VerdictToJson(const MatchVerdict& verdict) {
  json j = {{"allowed", verdict.allowed}};
  j["matched_policy"] =
      verdict.matched_policy ? PolicyToJson(*verdict.matched_policy) : json();
  json failed = json::array();
  for (const FailedPredicate& f : verdict.failed_predicates) {
    failed.push_back({{"policy", PolicyToJson(f.policy)},
                      {"predicate", f.predicate},
                      {"detail", f.detail}});
  }
  j["failed_predicates"] = std::move(failed);
  return j;
}

void PrintVerdict(const MatchVerdict& verdict, absl::string_view indent,
                  std::ostream& out) {
  if (verdict.allowed) {
    out << indent << "matched " << FormatOrigin(*verdict.matched_policy)
        << "\n";
    return;
  }
  if (verdict.failed_predicates.empty()) {
    out << indent << "no policies deployed\n";
  }
  for (const FailedPredicate& f : verdict.failed_predicates) {
    out << indent << FormatOrigin(f.policy) << ": " << f.predicate << " ("
        << f.detail << ")\n";
  }
}

void PrintScenarioTable(const ScenarioReport& report, MatchMode mode,
                        std::ostream& out) {
  out << "mode: " << MatchModeName(mode) << "\n";
  for (const StepOutcome& o : report.outcomes) {
    out << absl::StrFormat("[%d] %-18s %s\n", o.index, o.action,
                           o.description);
    out << "    expected " << o.expected.ToString() << ", got "
        << FormatStatus(o.actual) << "  "
        << (o.as_expected ? "PASS" : "FAIL") << "\n";
    if (o.verdict) PrintVerdict(*o.verdict, "      ", out);
    if (!o.as_expected && !o.actual.ok()) {
      out << "    " << o.actual.message() << "\n";
    }
  }
  out << (report.passed ? "PASSED" : "FAILED") << " (" << report.steps_run
      << " of " << report.outcomes.size() << " steps run";
  if (report.aborted_at) out << ", aborted at step " << *report.aborted_at;
  out << ")\n";
}

json ScenarioToJson(const ScenarioReport& report, MatchMode mode) {
  json outcomes = json::array();
  for (const StepOutcome& o : report.outcomes) {
    outcomes.push_back({{"index", o.index},
                        {"action", o.action},
                        {"description", o.description},
                        {"expected", o.expected.ToString()},
                        {"actual", StatusToJson(o.actual)},
                        {"verdict", o.verdict ? VerdictToJson(*o.verdict)
                                              : json()},
                        {"as_expected", o.as_expected}});
  }
  return {{"mode", std::string(MatchModeName(mode))},
          {"passed", report.passed},
          {"steps_run", report.steps_run},
          {"aborted_at", report.aborted_at ? json(*report.aborted_at) : json()},
          {"outcomes", std::move(outcomes)}};
}

std::string AppLabel(const Topology& topology, AppId id) {
  return topology.ApplicationName(id);
}

void PrintReachabilityTable(const ReachabilityMatrix& matrix,
                            const Topology& topology, std::ostream& out) {
  out << "mode: " << MatchModeName(matrix.mode) << "\n";
  out << absl::StrFormat("%-12s %-12s %-44s %-7s %s\n", "SENDER", "RECEIVER",
                         "ENDPOINT", "VERDICT", "DETAIL");
  for (const ReachabilityEntry& e : matrix.entries) {
    std::string detail;
    if (e.result.allowed()) {
      detail = FormatOrigin(*e.result.verdict->matched_policy);
    } else if (std::optional<ErrorCode> code =
                   GetErrorCode(e.result.status)) {
      detail = std::string(ErrorCodeName(*code));
    }
    out << absl::StrFormat("%-12s %-12s %-44s %-7s %s\n",
                           AppLabel(topology, e.sender),
                           AppLabel(topology, e.receiver),
                           e.endpoint.ToString(),
                           e.result.allowed() ? "allow" : "deny", detail);
  }
  out << "allowed: " << matrix.AllowedCount() << " of "
      << matrix.entries.size() << "\n";
}

json ReachabilityToJson(const ReachabilityMatrix& matrix,
                        const Topology& topology) {
  json entries = json::array();
  for (const ReachabilityEntry& e : matrix.entries) {
    entries.push_back(
        {{"sender", {{"id", e.sender.value},
                     {"name", AppLabel(topology, e.sender)}}},
         {"receiver", {{"id", e.receiver.value},
                       {"name", AppLabel(topology, e.receiver)}}},
         {"endpoint", EndpointToJson(e.endpoint)},
         {"allowed", e.result.allowed()},
         {"status", StatusToJson(e.result.status)},
         {"verdict",
          e.result.verdict ? VerdictToJson(*e.result.verdict) : json()}});
  }
  return {{"mode", std::string(MatchModeName(matrix.mode))},
          {"allowed_count", matrix.AllowedCount()},
          {"entries", std::move(entries)}};
}

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return kExitError;
}

}  // namespace

absl::StatusOr<ReportFormat> ParseReportFormat(absl::string_view text) {
  if (text == "table") return ReportFormat::kTable;
  if (text == "json") return ReportFormat::kJson;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown format '", text, "'; expected table or json"));
}

absl::StatusOr<Endpoint> ParseEndpointSpec(absl::string_view spec) {
  std::optional<Cidr> cidr;
  std::optional<Namespace> ns;
  std::optional<int> port;
  std::optional<std::string> label;

  auto parse_cidr = [](absl::string_view text) -> absl::StatusOr<Cidr> {
    if (text.find('/') == absl::string_view::npos) {
      return Cidr::Parse(absl::StrCat(text, "/32"));
    }
    return Cidr::Parse(text);
  };

  absl::string_view rest = spec;
  while (!rest.empty()) {
    size_t comma = rest.find(',');
    absl::string_view item = rest.substr(0, comma);
    size_t eq = item.find('=');
    absl::string_view key = eq == absl::string_view::npos ? "cidr"
                                                          : item.substr(0, eq);
    absl::string_view value =
        eq == absl::string_view::npos ? item : item.substr(eq + 1);
    if (key == "label") {
      // Takes the remainder, so multi-key selector labels survive.
      label = std::string(rest.substr(eq + 1));
      break;
    }
    if (key == "cidr") {
      CNPV_ASSIGN_OR_RETURN(cidr, parse_cidr(value));
    } else if (key == "ns") {
      std::vector<absl::string_view> parts =
          absl::StrSplit(value, absl::MaxSplits('/', 1));
      std::uint32_t id = kDefaultNamespaceId;
      if (parts.size() == 2 && !absl::SimpleAtoi(parts[1], &id)) {
        return MakeError(ErrorCode::kInvalidNamespace,
                         absl::StrCat("bad namespace id in '", value, "'"));
      }
      CNPV_ASSIGN_OR_RETURN(ns, Namespace::Create(std::string(parts[0]), id));
    } else if (key == "port") {
      int p = 0;
      if (!absl::SimpleAtoi(value, &p) || p < 1 || p > 65535) {
        return MakeError(ErrorCode::kInvalidPort,
                         absl::StrCat("'", value, "' is not a port"));
      }
      port = p;
    } else {
      return MakeError(ErrorCode::kInvalidEndpoint,
                       absl::StrCat("unknown endpoint key '", key, "'"));
    }
    if (comma == absl::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return Endpoint::Create(cidr, ns, port, std::move(label));
}

int RunCheck(const CheckOptions& options, std::ostream& out,
             std::ostream& err) {
  absl::StatusOr<std::vector<Policy>> policies =
      LoadPolicies(options.common.policy_files, err);
  if (!policies.ok()) return Fail(err, policies.status());

  SystemState initial;
  ScenarioContext context;
  context.policy_documents = GroupByDocument(*policies);
  if (options.common.topology_file) {
    absl::StatusOr<Topology> topology =
        LoadTopology(*options.common.topology_file);
    if (!topology.ok()) return Fail(err, topology.status());
    absl::StatusOr<SystemState> built = BuildSystem(*topology, *policies);
    if (!built.ok()) return Fail(err, built.status());
    initial = *std::move(built);
    context.endpoints = topology->endpoints;
  } else {
    for (const Policy& policy : *policies) initial.InsertPolicy(policy);
  }

  absl::StatusOr<std::string> text = ReadFile(options.scenario_file);
  if (!text.ok()) return Fail(err, text.status());
  absl::StatusOr<ScenarioDocument> scenario = ParseScenario(*text, context);
  if (!scenario.ok()) {
    return Fail(err, InFile(options.scenario_file, scenario.status()));
  }

  TransferOptions transfer;
  transfer.mode = options.common.mode.value_or(
      scenario->mode.value_or(MatchMode::kStrict));
  transfer.check_listen = options.common.check_listen;
  ScenarioReport report =
      RunScenario(scenario->steps, transfer, std::move(initial));

  if (options.common.format == ReportFormat::kJson) {
    out << ScenarioToJson(report, transfer.mode).dump(2) << "\n";
  } else {
    PrintScenarioTable(report, transfer.mode, out);
  }
  return report.passed ? kExitOk : kExitFailed;
}

int RunReachability(const CommonOptions& options, std::ostream& out,
                    std::ostream& err) {
  if (!options.topology_file) {
    return Fail(err, absl::InvalidArgumentError(
                         "reachability requires --topology"));
  }
  absl::StatusOr<std::vector<Policy>> policies =
      LoadPolicies(options.policy_files, err);
  if (!policies.ok()) return Fail(err, policies.status());
  absl::StatusOr<Topology> topology = LoadTopology(*options.topology_file);
  if (!topology.ok()) return Fail(err, topology.status());
  absl::StatusOr<SystemState> state = BuildSystem(*topology, *policies);
  if (!state.ok()) return Fail(err, state.status());

  TransferOptions transfer;
  transfer.mode = options.mode.value_or(MatchMode::kStrict);
  transfer.check_listen = options.check_listen;
  ReachabilityMatrix matrix = ComputeReachability(*state, transfer);

  if (options.format == ReportFormat::kJson) {
    out << ReachabilityToJson(matrix, *topology).dump(2) << "\n";
  } else {
    PrintReachabilityTable(matrix, *topology, out);
  }
  return kExitOk;
}

int RunExplain(const ExplainOptions& options, std::ostream& out,
               std::ostream& err) {
  absl::StatusOr<Endpoint> from = ParseEndpointSpec(options.from);
  if (!from.ok()) return Fail(err, from.status());
  absl::StatusOr<Endpoint> to = ParseEndpointSpec(options.to);
  if (!to.ok()) return Fail(err, to.status());
  absl::StatusOr<std::vector<Policy>> loaded =
      LoadPolicies(options.common.policy_files, err);
  if (!loaded.ok()) return Fail(err, loaded.status());

  // Structural duplicates collapse onto the smallest origin.
  const std::set<Policy> policies(loaded->begin(), loaded->end());
  const MatchMode mode = options.common.mode.value_or(MatchMode::kStrict);
  const MatchVerdict verdict = Evaluate(policies, *from, *to, mode);

  if (options.common.format == ReportFormat::kJson) {
    json rows = json::array();
    for (const Policy& policy : policies) {
      std::optional<FailedPredicate> failed =
          ExplainPolicy(policy, *from, *to, mode);
      json row = {{"policy", PolicyToJson(policy)}, {"match", !failed}};
      if (failed) {
        row["predicate"] = failed->predicate;
        row["detail"] = failed->detail;
      }
      rows.push_back(std::move(row));
    }
    json report = {{"mode", std::string(MatchModeName(mode))},
                   {"from", EndpointToJson(*from)},
                   {"to", EndpointToJson(*to)},
                   {"policies", std::move(rows)},
                   {"verdict", VerdictToJson(verdict)}};
    out << report.dump(2) << "\n";
  } else {
    out << "mode: " << MatchModeName(mode) << "\n"
        << "from: " << from->ToString() << "\n"
        << "to:   " << to->ToString() << "\n";
    if (policies.empty()) out << "no policies loaded\n";
    for (const Policy& policy : policies) {
      std::optional<FailedPredicate> failed =
          ExplainPolicy(policy, *from, *to, mode);
      out << FormatOrigin(policy) << ": ";
      if (failed) {
        out << "FAIL " << failed->predicate << " (" << failed->detail << ")\n";
      } else {
        out << "MATCH\n";
      }
    }
    out << "verdict: " << (verdict.allowed ? "allow" : "deny");
    if (verdict.allowed) {
      out << " via " << FormatOrigin(*verdict.matched_policy);
    }
    out << "\n";
  }
  return verdict.allowed ? kExitOk : kExitFailed;
}

}  // namespace cnpverify::cli
