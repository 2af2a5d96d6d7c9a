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

// Exception-free accessors over yaml-cpp nodes. Every failure is a
// kMalformedYaml status naming the offending path.

#ifndef CNPVERIFY_SRC_YAML_UTIL_H_
#define CNPVERIFY_SRC_YAML_UTIL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "yaml-cpp/yaml.h"

namespace cnpverify::internal {

absl::Status Malformed(absl::string_view path, absl::string_view what);

absl::StatusOr<std::vector<YAML::Node>> LoadDocuments(absl::string_view text);

// Map keys in document order. Fails unless `node` is a map.
absl::StatusOr<std::vector<std::string>> MapKeys(const YAML::Node& node,
                                                 absl::string_view path);

absl::StatusOr<std::string> AsString(const YAML::Node& node,
                                     absl::string_view path);
// Plain decimal digits, quoted or not.
absl::StatusOr<std::int64_t> AsInteger(const YAML::Node& node,
                                       absl::string_view path);
absl::StatusOr<bool> AsBool(const YAML::Node& node, absl::string_view path);

// A TCP/UDP port in [1, 65535], quoted or not. Fails with kInvalidPort.
absl::StatusOr<int> AsPort(const YAML::Node& node, absl::string_view path);

// Fails unless `node` is undefined, null or a sequence. Undefined and null
// yield an empty list.
absl::StatusOr<std::vector<YAML::Node>> AsSequence(const YAML::Node& node,
                                                   absl::string_view path);

bool IsSet(const YAML::Node& node);

}  // namespace cnpverify::internal

#endif  // CNPVERIFY_SRC_YAML_UTIL_H_
