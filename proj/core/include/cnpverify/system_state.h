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

#ifndef CNPVERIFY_SYSTEM_STATE_H_
#define CNPVERIFY_SYSTEM_STATE_H_

#include <map>
#include <set>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cnpverify/model.h"

namespace cnpverify {

// The global system: deployed applications, deployed policies, known
// endpoints and the data each application has received.
//
// The insert primitives below keep the invariants (unique application ids,
// no duplicate policies or endpoints, received-data logs only for deployed
// applications) but know nothing about operation contracts. The contract-
// checked operations live in scenario.h.
//
// A SystemState is a plain value: copy it to snapshot, compare with == for
// deep equality. It has no internal synchronization.
class SystemState {
 public:
  SystemState() = default;

  const std::map<AppId, Application>& applications() const {
    return applications_;
  }
  const std::set<Policy>& policies() const { return policies_; }
  const std::set<Endpoint>& endpoints() const { return endpoints_; }
  const std::map<AppId, std::vector<Message>>& app_data() const {
    return app_data_;
  }

  // nullptr if no application has `id`.
  const Application* FindApplication(AppId id) const;
  // Fails with kUnknownApplication (operation GetApplication).
  absl::StatusOr<Application> GetApplication(AppId id) const;

  bool HasEndpoint(const Endpoint& endpoint) const {
    return endpoints_.contains(endpoint);
  }
  bool HasPolicy(const Policy& policy) const {
    return policies_.contains(policy);
  }

  // Each returns false and leaves the state untouched if the element (or
  // application id) is already present.
  bool InsertEndpoint(Endpoint endpoint);
  bool InsertPolicy(Policy policy);
  // Also creates an empty received-data log for the application.
  bool InsertApplication(Application application);

  // Returns false if `receiver` is not deployed.
  bool AppendMessage(AppId receiver, Message message);

  // Number of messages across all logs.
  std::size_t TotalMessages() const;

  // Re-verifies every invariant from scratch. Intended for tests.
  absl::Status CheckInvariants() const;

  friend bool operator==(const SystemState&, const SystemState&) = default;

 private:
  std::map<AppId, Application> applications_;
  std::set<Policy> policies_;
  std::set<Endpoint> endpoints_;
  std::map<AppId, std::vector<Message>> app_data_;
};

// An empty system.
inline SystemState NewSystem() { return SystemState(); }

}  // namespace cnpverify

#endif  // CNPVERIFY_SYSTEM_STATE_H_
