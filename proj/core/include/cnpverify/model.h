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
// File: model.h
// -----------------------------------------------------------------------------
//
// Value types for the policy model: namespaces, endpoints, directed
// endpoint-pair policies and deployed applications. All types validate their
// invariants on construction and are immutable afterwards, so they can be
// shared freely across threads.

#ifndef CNPVERIFY_MODEL_H_
#define CNPVERIFY_MODEL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "cnpverify/cidr.h"

namespace cnpverify {

class Namespace {
 public:
  // `name` must be non-empty.
  static absl::StatusOr<Namespace> Create(std::string name, std::uint32_t id);

  const std::string& name() const { return name_; }
  std::uint32_t id() const { return id_; }

  friend bool operator==(const Namespace&, const Namespace&) = default;
  friend auto operator<=>(const Namespace&, const Namespace&) = default;

 private:
  Namespace(std::string name, std::uint32_t id)
      : name_(std::move(name)), id_(id) {}

  std::string name_;
  std::uint32_t id_;
};

// Anything a policy can name or an application can bind to. Each field is
// optional; an absent field means "not constrained". Sentinel spellings such
// as port 0 or an empty label never reach this type (see sentinel.h).
class Endpoint {
 public:
  // Fails with kInvalidEndpoint if all four fields are absent, if `port` is
  // outside [1, 65535], or if `label` is present but empty.
  static absl::StatusOr<Endpoint> Create(std::optional<Cidr> cidr,
                                         std::optional<Namespace> ns,
                                         std::optional<int> port,
                                         std::optional<std::string> label);

  const std::optional<Cidr>& cidr() const { return cidr_; }
  const std::optional<Namespace>& ns() const { return ns_; }
  const std::optional<std::uint16_t>& port() const { return port_; }
  const std::optional<std::string>& label() const { return label_; }

  // Compact human-readable form, e.g. "{ns=NS-UI/1 port=443 label=WebUI}".
  std::string ToString() const;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;

 private:
  Endpoint() = default;

  std::optional<Cidr> cidr_;
  std::optional<Namespace> ns_;
  std::optional<std::uint16_t> port_;
  std::optional<std::string> label_;
};

// Serialized as 0 and 1.
enum class Direction : std::uint8_t {
  kIngress = 0,
  kEgress = 1,
};

absl::StatusOr<Direction> DirectionFromInt(std::int64_t value);
int DirectionToInt(Direction direction);
absl::string_view DirectionName(Direction direction);

// Where an ingested policy came from.
struct PolicyOrigin {
  std::string document;
  int rule_index = 0;
  // "ingress" or "egress"; the rule index counts within that section.
  std::string section;

  friend bool operator==(const PolicyOrigin&, const PolicyOrigin&) = default;
};

// One ordered endpoint pair with a direction.
//
//   Ingress: (receiver, sender)
//   Egress:  (sender, receiver)
//
// Equality and ordering consider only the pair and the direction; `origin` is
// metadata.
class Policy {
 public:
  Policy(Endpoint first, Endpoint second, Direction direction,
         std::optional<PolicyOrigin> origin = std::nullopt)
      : first_(std::move(first)),
        second_(std::move(second)),
        direction_(direction),
        origin_(std::move(origin)) {}

  const Endpoint& first() const { return first_; }
  const Endpoint& second() const { return second_; }
  Direction direction() const { return direction_; }
  const std::optional<PolicyOrigin>& origin() const { return origin_; }

  std::string ToString() const;

  friend bool operator==(const Policy& a, const Policy& b) {
    return a.direction_ == b.direction_ && a.first_ == b.first_ &&
           a.second_ == b.second_;
  }
  friend std::strong_ordering operator<=>(const Policy& a, const Policy& b) {
    if (auto c = a.first_ <=> b.first_; c != 0) return c;
    if (auto c = a.second_ <=> b.second_; c != 0) return c;
    return a.direction_ <=> b.direction_;
  }

 private:
  Endpoint first_;
  Endpoint second_;
  Direction direction_;
  std::optional<PolicyOrigin> origin_;
};

struct AppId {
  std::uint64_t value = 0;

  friend bool operator==(AppId, AppId) = default;
  friend auto operator<=>(AppId, AppId) = default;
};

struct Application {
  AppId id;
  Endpoint send_endpoint;
  std::set<Endpoint> listen_endpoints;
  bool receive_only = false;
  // Recorded for reporting only; transfer decisions consult the global policy
  // set of the system.
  std::set<Policy> applied_policies;

  friend bool operator==(const Application&, const Application&) = default;
};

// Opaque, content-free datum. Two messages are equal only if one is a copy of
// the other.
class Message {
 public:
  // Never returns a token equal to an earlier one. Thread-safe.
  static Message Fresh();

  std::uint64_t token() const { return token_; }

  friend bool operator==(const Message&, const Message&) = default;

 private:
  explicit Message(std::uint64_t token) : token_(token) {}

  std::uint64_t token_;
};

}  // namespace cnpverify

#endif  // CNPVERIFY_MODEL_H_
