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
// File: match.h
// -----------------------------------------------------------------------------
//
// Decides whether a policy permits a transfer from a sender's send endpoint to
// a receiver endpoint. Two matching modes are supported:
//
//   * kStrict: a policy endpoint matches only a structurally equal endpoint.
//     This is the equality-based model in which deny-by-default means "some
//     deployed policy names exactly this (endpoint, endpoint) pair".
//   * kSemantic: every field present on the policy endpoint constrains the
//     concrete endpoint; CIDRs by containment, namespaces by name, ports and
//     labels by equality. Absent policy fields are wildcards. This mirrors how
//     Cilium evaluates a CiliumNetworkPolicy against traffic.
//
// All functions here are pure and thread-safe.

#ifndef CNPVERIFY_MATCH_H_
#define CNPVERIFY_MATCH_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "cnpverify/model.h"

namespace cnpverify {

enum class MatchMode {
  kStrict,
  kSemantic,
};

absl::string_view MatchModeName(MatchMode mode);
// Accepts "strict" and "semantic".
absl::StatusOr<MatchMode> ParseMatchMode(absl::string_view text);

// Why one policy endpoint rejected a concrete endpoint.
struct FieldMismatch {
  // "cidr", "namespace", "port" or "label".
  std::string field;
  std::string detail;
};

// First field (in cidr, namespace, port, label order) on which `concrete`
// fails `spec`, or nullopt if it matches.
std::optional<FieldMismatch> FindMismatch(const Endpoint& spec,
                                          const Endpoint& concrete,
                                          MatchMode mode);

inline bool EndpointMatches(const Endpoint& spec, const Endpoint& concrete,
                            MatchMode mode) {
  return !FindMismatch(spec, concrete, mode).has_value();
}

// Ingress policies match (receiver, sender); egress policies match
// (sender, receiver).
bool PolicyPermits(const Policy& policy, const Endpoint& sender,
                   const Endpoint& receiver, MatchMode mode);

struct FailedPredicate {
  Policy policy;
  // "direction" when the policy would permit the reverse flow, otherwise
  // "<role>.<field>" such as "sender.cidr" or "receiver.port".
  std::string predicate;
  std::string detail;

  friend bool operator==(const FailedPredicate&,
                         const FailedPredicate&) = default;
};

// The first predicate of `policy` that rejects the flow, or nullopt if the
// policy permits it.
std::optional<FailedPredicate> ExplainPolicy(const Policy& policy,
                                             const Endpoint& sender,
                                             const Endpoint& receiver,
                                             MatchMode mode);

struct MatchVerdict {
  bool allowed = false;
  // Set iff `allowed`. When several policies permit the flow this is the one
  // with the lexicographically smallest canonical serialization.
  std::optional<Policy> matched_policy;
  // Empty iff `allowed`. Otherwise one entry per policy, ordered by policy.
  std::vector<FailedPredicate> failed_predicates;

  friend bool operator==(const MatchVerdict&, const MatchVerdict&) = default;
};

// Deny-by-default: the flow is allowed iff at least one policy permits it.
// The result does not depend on the order of `policies`.
MatchVerdict Evaluate(std::span<const Policy> policies, const Endpoint& sender,
                      const Endpoint& receiver, MatchMode mode);
MatchVerdict Evaluate(const std::set<Policy>& policies, const Endpoint& sender,
                      const Endpoint& receiver, MatchMode mode);

}  // namespace cnpverify

#endif  // CNPVERIFY_MATCH_H_
