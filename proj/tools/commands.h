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
// Implementation of the cnpverify subcommands. Each Run* function writes its
// report to `out`, diagnostics to `err`, and returns the process exit code.

#ifndef CNPVERIFY_TOOLS_COMMANDS_H_
#define CNPVERIFY_TOOLS_COMMANDS_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "cnpverify/match.h"
#include "cnpverify/model.h"

namespace cnpverify::cli {

inline constexpr int kExitOk = 0;
// Scenario expectation mismatch, or the explained flow is denied.
inline constexpr int kExitFailed = 1;
// Unreadable files, parse errors, bad arguments.
inline constexpr int kExitError = 2;

enum class ReportFormat { kTable, kJson };

absl::StatusOr<ReportFormat> ParseReportFormat(absl::string_view text);

struct CommonOptions {
  std::vector<std::string> policy_files;
  std::optional<std::string> topology_file;
  // Unset means "scenario's choice, else strict".
  std::optional<MatchMode> mode;
  ReportFormat format = ReportFormat::kTable;
  bool check_listen = false;
};

struct CheckOptions {
  CommonOptions common;
  std::string scenario_file;
};

struct ExplainOptions {
  CommonOptions common;
  std::string from;
  std::string to;
};

// Parses "key=value" pairs separated by commas, keys cidr, ns, port, label.
// A cidr without a prefix is a /32 host; ns is NAME or NAME/ID (default id 1).
// label must come last and takes the rest of the text, commas included. A
// lone value without "=" is read as a cidr.
absl::StatusOr<Endpoint> ParseEndpointSpec(absl::string_view spec);

int RunCheck(const CheckOptions& options, std::ostream& out,
             std::ostream& err);
int RunReachability(const CommonOptions& options, std::ostream& out,
                    std::ostream& err);
int RunExplain(const ExplainOptions& options, std::ostream& out,
               std::ostream& err);

}  // namespace cnpverify::cli

#endif  // CNPVERIFY_TOOLS_COMMANDS_H_
