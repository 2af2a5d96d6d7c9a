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

#include "cnpverify/match.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "cnpverify/errors.h"
#include "cnpverify/serialize.h"

namespace cnpverify {
namespace {

template <typename T, typename Render>
std::string Describe(const std::optional<T>& value, Render render) {
  return value.has_value() ? render(*value) : std::string("<absent>");
}

std::string RenderNamespace(const Namespace& ns) {
  return absl::StrCat(ns.name(), "/", ns.id());
}

std::optional<FieldMismatch> StrictMismatch(const Endpoint& spec,
                                            const Endpoint& concrete) {
  if (spec.cidr() != concrete.cidr()) {
    auto render = [](const Cidr& c) { return c.ToString(); };
    return FieldMismatch{"cidr", absl::StrCat("expected ",
                                              Describe(spec.cidr(), render),
                                              ", got ",
                                              Describe(concrete.cidr(), render))};
  }
  if (spec.ns() != concrete.ns()) {
    return FieldMismatch{
        "namespace",
        absl::StrCat("expected ", Describe(spec.ns(), RenderNamespace),
                     ", got ", Describe(concrete.ns(), RenderNamespace))};
  }
  if (spec.port() != concrete.port()) {
    auto render = [](std::uint16_t p) { return absl::StrCat(p); };
    return FieldMismatch{"port", absl::StrCat("expected ",
                                              Describe(spec.port(), render),
                                              ", got ",
                                              Describe(concrete.port(), render))};
  }
  if (spec.label() != concrete.label()) {
    auto render = [](const std::string& l) { return l; };
    return FieldMismatch{
        "label", absl::StrCat("expected ", Describe(spec.label(), render),
                              ", got ", Describe(concrete.label(), render))};
  }
  return std::nullopt;
}

std::optional<FieldMismatch> SemanticMismatch(const Endpoint& spec,
                                              const Endpoint& concrete) {
  if (spec.cidr()) {
    if (!concrete.cidr()) {
      return FieldMismatch{"cidr", absl::StrCat("requires an address within ",
                                                spec.cidr()->ToString(),
                                                ", endpoint has no cidr")};
    }
    switch (CidrContains(*spec.cidr(), *concrete.cidr())) {
      case Containment::kInside:
        break;
      case Containment::kOutside:
        return FieldMismatch{
            "cidr", absl::StrCat(concrete.cidr()->ToString(), " not within ",
                                 spec.cidr()->ToString())};
      case Containment::kUndefined:
        return FieldMismatch{
            "cidr", absl::StrCat(concrete.cidr()->ToString(),
                                 " is wider than ", spec.cidr()->ToString(),
                                 "; containment undefined")};
    }
  }
  if (spec.ns()) {
    if (!concrete.ns() || concrete.ns()->name() != spec.ns()->name()) {
      return FieldMismatch{
          "namespace",
          absl::StrCat("expected namespace ", spec.ns()->name(), ", got ",
                       concrete.ns() ? concrete.ns()->name() : "<absent>")};
    }
  }
  if (spec.port() && spec.port() != concrete.port()) {
    return FieldMismatch{
        "port", absl::StrCat("expected port ", *spec.port(), ", got ",
                             concrete.port() ? absl::StrCat(*concrete.port())
                                             : "<absent>")};
  }
  if (spec.label() && spec.label() != concrete.label()) {
    return FieldMismatch{
        "label", absl::StrCat("expected label ", *spec.label(), ", got ",
                              concrete.label().value_or("<absent>"))};
  }
  return std::nullopt;
}

struct Roles {
  // The concrete endpoints matched by policy.first() and policy.second().
  const Endpoint& first;
  const Endpoint& second;
  absl::string_view first_role;
  absl::string_view second_role;
};

Roles RolesFor(Direction direction, const Endpoint& sender,
               const Endpoint& receiver) {
  if (direction == Direction::kIngress) {
    return {receiver, sender, "receiver", "sender"};
  }
  return {sender, receiver, "sender", "receiver"};
}

}  // namespace

absl::string_view MatchModeName(MatchMode mode) {
  return mode == MatchMode::kStrict ? "strict" : "semantic";
}

absl::StatusOr<MatchMode> ParseMatchMode(absl::string_view text) {
  if (text == "strict") return MatchMode::kStrict;
  if (text == "semantic") return MatchMode::kSemantic;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown match mode '", text,
                   "'; expected strict or semantic"));
}

std::optional<FieldMismatch> FindMismatch(const Endpoint& spec,
                                          const Endpoint& concrete,
                                          MatchMode mode) {
  return mode == MatchMode::kStrict ? StrictMismatch(spec, concrete)
                                    : SemanticMismatch(spec, concrete);
}

bool PolicyPermits(const Policy& policy, const Endpoint& sender,
                   const Endpoint& receiver, MatchMode mode) {
  Roles roles = RolesFor(policy.direction(), sender, receiver);
  return EndpointMatches(policy.first(), roles.first, mode) &&
         EndpointMatches(policy.second(), roles.second, mode);
}

std::optional<FailedPredicate> ExplainPolicy(const Policy& policy,
                                             const Endpoint& sender,
                                             const Endpoint& receiver,
                                             MatchMode mode) {
  Roles roles = RolesFor(policy.direction(), sender, receiver);
  std::optional<FieldMismatch> mismatch =
      FindMismatch(policy.first(), roles.first, mode);
  absl::string_view role = roles.first_role;
  if (!mismatch) {
    mismatch = FindMismatch(policy.second(), roles.second, mode);
    role = roles.second_role;
  }
  if (!mismatch) return std::nullopt;

  if (PolicyPermits(policy, receiver, sender, mode)) {
    return FailedPredicate{
        policy, "direction",
        absl::StrCat(DirectionName(policy.direction()),
                     " policy permits the reverse flow only")};
  }
  return FailedPredicate{policy, absl::StrCat(role, ".", mismatch->field),
                         std::move(mismatch->detail)};
}

namespace {

MatchVerdict EvaluateOrdered(const std::vector<const Policy*>& ordered,
                             const Endpoint& sender, const Endpoint& receiver,
                             MatchMode mode) {
  MatchVerdict verdict;
  std::vector<const Policy*> permitting;
  for (const Policy* policy : ordered) {
    std::optional<FailedPredicate> failure =
        ExplainPolicy(*policy, sender, receiver, mode);
    if (failure) {
      verdict.failed_predicates.push_back(*std::move(failure));
    } else {
      permitting.push_back(policy);
    }
  }
  if (permitting.empty()) return verdict;

  const Policy* chosen = permitting.front();
  if (permitting.size() > 1) {
    std::string best = SerializePolicy(*chosen, /*with_origin=*/false);
    for (const Policy* candidate : permitting) {
      std::string key = SerializePolicy(*candidate, /*with_origin=*/false);
      if (key < best) {
        best = std::move(key);
        chosen = candidate;
      }
    }
  }
  verdict.allowed = true;
  verdict.matched_policy = *chosen;
  verdict.failed_predicates.clear();
  return verdict;
}

}  // namespace

MatchVerdict Evaluate(std::span<const Policy> policies, const Endpoint& sender,
                      const Endpoint& receiver, MatchMode mode) {
  std::vector<const Policy*> ordered;
  ordered.reserve(policies.size());
  for (const Policy& policy : policies) ordered.push_back(&policy);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Policy* a, const Policy* b) { return *a < *b; });
  return EvaluateOrdered(ordered, sender, receiver, mode);
}

MatchVerdict Evaluate(const std::set<Policy>& policies, const Endpoint& sender,
                      const Endpoint& receiver, MatchMode mode) {
  std::vector<const Policy*> ordered;
  ordered.reserve(policies.size());
  for (const Policy& policy : policies) ordered.push_back(&policy);
  return EvaluateOrdered(ordered, sender, receiver, mode);
}

}  // namespace cnpverify
