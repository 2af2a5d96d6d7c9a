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

#include "yaml_util.h"

#include <charconv>

#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "cnpverify/errors.h"

namespace cnpverify::internal {

absl::Status Malformed(absl::string_view path, absl::string_view what) {
  return MakeError(ErrorCode::kMalformedYaml, absl::StrCat(path, ": ", what));
}

absl::StatusOr<std::vector<YAML::Node>> LoadDocuments(absl::string_view text) {
  try {
    return YAML::LoadAll(std::string(text));
  } catch (const YAML::Exception& e) {
    return MakeError(ErrorCode::kMalformedYaml, e.what());
  }
}

bool IsSet(const YAML::Node& node) { return node.IsDefined() && !node.IsNull(); }

absl::StatusOr<std::vector<std::string>> MapKeys(const YAML::Node& node,
                                                 absl::string_view path) {
  if (!node.IsMap()) return Malformed(path, "expected a mapping");
  std::vector<std::string> keys;
  for (const auto& entry : node) {
    if (!entry.first.IsScalar()) return Malformed(path, "non-scalar key");
    keys.push_back(entry.first.Scalar());
  }
  return keys;
}

absl::StatusOr<std::string> AsString(const YAML::Node& node,
                                     absl::string_view path) {
  if (!node.IsDefined()) return Malformed(path, "missing");
  if (!node.IsScalar()) return Malformed(path, "expected a scalar");
  return node.Scalar();
}

absl::StatusOr<std::int64_t> AsInteger(const YAML::Node& node,
                                       absl::string_view path) {
  absl::StatusOr<std::string> text = AsString(node, path);
  if (!text.ok()) return text.status();
  std::int64_t value = 0;
  const char* begin = text->data();
  const char* end = begin + text->size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text->empty() || (*text)[0] == '-' || (*text)[0] == '+' ||
      ec != std::errc() || ptr != end) {
    return Malformed(path, absl::StrCat("'", *text, "' is not an integer"));
  }
  return value;
}

absl::StatusOr<bool> AsBool(const YAML::Node& node, absl::string_view path) {
  if (!node.IsDefined() || !node.IsScalar()) {
    return Malformed(path, "expected true or false");
  }
  try {
    return node.as<bool>();
  } catch (const YAML::Exception&) {
    return Malformed(path, absl::StrCat("'", node.Scalar(),
                                        "' is not a boolean"));
  }
}

absl::StatusOr<int> AsPort(const YAML::Node& node, absl::string_view path) {
  if (!node.IsDefined() || !node.IsScalar()) {
    return MakeError(ErrorCode::kInvalidPort,
                     absl::StrCat(path, ": expected a port number"));
  }
  absl::StatusOr<std::int64_t> value = AsInteger(node, path);
  if (!value.ok() || *value < 1 || *value > 65535) {
    return MakeError(ErrorCode::kInvalidPort,
                     absl::StrCat(path, ": '", node.Scalar(),
                                  "' is not a port in [1, 65535]"));
  }
  return static_cast<int>(*value);
}

absl::StatusOr<std::vector<YAML::Node>> AsSequence(const YAML::Node& node,
                                                   absl::string_view path) {
  std::vector<YAML::Node> items;
  if (!IsSet(node)) return items;
  if (!node.IsSequence()) return Malformed(path, "expected a sequence");
  for (const auto& item : node) items.push_back(item);
  return items;
}

}  // namespace cnpverify::internal
