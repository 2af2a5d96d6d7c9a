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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "cnpverify/match.h"

namespace {

using cnpverify::cli::CommonOptions;

void AddCommonFlags(CLI::App& cmd, CommonOptions& options, std::string& mode,
                    std::string& format) {
  cmd.add_option("--policies", options.policy_files,
                 "CiliumNetworkPolicy YAML files")
      ->check(CLI::ExistingFile);
  cmd.add_option("--mode", mode, "strict or semantic")
      ->check(CLI::IsMember({"strict", "semantic"}));
  cmd.add_option("--format", format, "table or json")
      ->check(CLI::IsMember({"table", "json"}));
}

// Applies the string-valued flags; false on a bad value.
bool Finish(CommonOptions& options, const std::string& mode,
            const std::string& format) {
  if (!mode.empty()) {
    auto parsed = cnpverify::ParseMatchMode(mode);
    if (!parsed.ok()) return false;
    options.mode = *parsed;
  }
  auto parsed_format = cnpverify::cli::ParseReportFormat(format);
  if (!parsed_format.ok()) return false;
  options.format = *parsed_format;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify Cilium network policies against deployment scenarios"};
  app.require_subcommand(1);

  cnpverify::cli::CheckOptions check;
  CommonOptions reach;
  cnpverify::cli::ExplainOptions explain;
  std::string mode, format = "table";
  std::string topology;

  CLI::App* check_cmd =
      app.add_subcommand("check", "Run a scenario and compare expectations");
  AddCommonFlags(*check_cmd, check.common, mode, format);
  check_cmd->add_option("--topology", topology, "Topology YAML file");
  check_cmd->add_option("--scenario", check.scenario_file,
                        "Scenario YAML file")
      ->required();
  check_cmd->add_flag("--check-listen", check.common.check_listen,
                      "Require the receiver to listen on the endpoint");

  CLI::App* reach_cmd = app.add_subcommand(
      "reachability", "Evaluate every application-to-application flow");
  AddCommonFlags(*reach_cmd, reach, mode, format);
  reach_cmd->add_option("--topology", topology, "Topology YAML file")
      ->required();
  reach_cmd->add_flag("--check-listen", reach.check_listen,
                      "Require the receiver to listen on the endpoint");

  CLI::App* explain_cmd =
      app.add_subcommand("explain", "Explain the decision for one flow");
  AddCommonFlags(*explain_cmd, explain.common, mode, format);
  explain_cmd->add_option("--from", explain.from, "Sender endpoint spec")
      ->required();
  explain_cmd->add_option("--to", explain.to, "Receiver endpoint spec")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cnpverify::cli::kExitOk : cnpverify::cli::kExitError;
  }

  if (*check_cmd) {
    if (!Finish(check.common, mode, format)) return cnpverify::cli::kExitError;
    if (!topology.empty()) check.common.topology_file = topology;
    return cnpverify::cli::RunCheck(check, std::cout, std::cerr);
  }
  if (*reach_cmd) {
    if (!Finish(reach, mode, format)) return cnpverify::cli::kExitError;
    reach.topology_file = topology;
    return cnpverify::cli::RunReachability(reach, std::cout, std::cerr);
  }
  if (!Finish(explain.common, mode, format)) return cnpverify::cli::kExitError;
  return cnpverify::cli::RunExplain(explain, std::cout, std::cerr);
}
