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

#include "cnpverify/model.h"

#include <atomic>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/string_view.h"
#include "cnpverify/errors.h"

namespace cnpverify {

absl::StatusOr<Namespace> Namespace::Create(std::string name,
                                            std::uint32_t id) {
  if (name.empty()) {
    return MakeError(ErrorCode::kInvalidNamespace, "namespace name is empty");
  }
  return Namespace(std::move(name), id);
}

absl::StatusOr<Endpoint> Endpoint::Create(std::optional<Cidr> cidr,
                                          std::optional<Namespace> ns,
                                          std::optional<int> port,
                                          std::optional<std::string> label) {
  if (!cidr && !ns && !port && !label) {
    return MakeError(ErrorCode::kInvalidEndpoint,
                     "an endpoint needs at least one of cidr, namespace, port "
                     "or label");
  }
  if (port.has_value() && (*port < 1 || *port > 65535)) {
    return MakeError(ErrorCode::kInvalidEndpoint,
                     absl::StrCat("port ", *port, " outside [1, 65535]"));
  }
  if (label.has_value() && label->empty()) {
    return MakeError(ErrorCode::kInvalidEndpoint, "label is present but empty");
  }
  Endpoint ep;
  ep.cidr_ = std::move(cidr);
  ep.ns_ = std::move(ns);
  if (port.has_value()) ep.port_ = static_cast<std::uint16_t>(*port);
  ep.label_ = std::move(label);
  return ep;
}

std::string Endpoint::ToString() const {
  std::vector<std::string> parts;
  if (cidr_) parts.push_back(absl::StrCat("cidr=", cidr_->ToString()));
  if (ns_) parts.push_back(absl::StrCat("ns=", ns_->name(), "/", ns_->id()));
  if (port_) parts.push_back(absl::StrCat("port=", *port_));
  if (label_) parts.push_back(absl::StrCat("label=", *label_));
  return absl::StrCat("{", absl::StrJoin(parts, " "), "}");
}

absl::StatusOr<Direction> DirectionFromInt(std::int64_t value) {
  switch (value) {
    case 0:
      return Direction::kIngress;
    case 1:
      return Direction::kEgress;
    default:
      return MakeError(ErrorCode::kInvalidDirection,
                       absl::StrCat("direction must be 0 (ingress) or 1 "
                                    "(egress), got ",
                                    value));
  }
}

int DirectionToInt(Direction direction) {
  return static_cast<int>(direction);
}

absl::string_view DirectionName(Direction direction) {
  return direction == Direction::kIngress ? "ingress" : "egress";
}

std::string Policy::ToString() const {
  std::string text = absl::StrCat(DirectionName(direction_), " ",
                                  first_.ToString(), " ", second_.ToString());
  if (origin_) {
    absl::StrAppend(&text, " [", origin_->document, " ", origin_->section,
                    " rule ", origin_->rule_index, "]");
  }
  return text;
}

Message Message::Fresh() {
  static std::atomic<std::uint64_t> next{1};
  return Message(next.fetch_add(1, std::memory_order_relaxed));
}

}  // namespace cnpverify
