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

#include "cnpverify/system_state.h"

#include "absl/strings/str_cat.h"
#include "cnpverify/errors.h"

namespace cnpverify {

const Application* SystemState::FindApplication(AppId id) const {
  auto it = applications_.find(id);
  return it == applications_.end() ? nullptr : &it->second;
}

absl::StatusOr<Application> SystemState::GetApplication(AppId id) const {
  if (const Application* app = FindApplication(id)) return *app;
  return MakeViolation(Operation::kGetApplication,
                       ErrorCode::kUnknownApplication,
                       absl::StrCat("no application with id ", id.value));
}

bool SystemState::InsertEndpoint(Endpoint endpoint) {
  return endpoints_.insert(std::move(endpoint)).second;
}

bool SystemState::InsertPolicy(Policy policy) {
  return policies_.insert(std::move(policy)).second;
}

bool SystemState::InsertApplication(Application application) {
  const AppId id = application.id;
  if (applications_.contains(id)) return false;
  applications_.emplace(id, std::move(application));
  app_data_.try_emplace(id);
  return true;
}

bool SystemState::AppendMessage(AppId receiver, Message message) {
  auto it = app_data_.find(receiver);
  if (it == app_data_.end()) return false;
  it->second.push_back(message);
  return true;
}

std::size_t SystemState::TotalMessages() const {
  std::size_t total = 0;
  for (const auto& [id, log] : app_data_) total += log.size();
  return total;
}

absl::Status SystemState::CheckInvariants() const {
  for (const auto& [id, app] : applications_) {
    if (app.id != id) {
      return absl::InternalError(
          absl::StrCat("application keyed ", id.value, " has id ",
                       app.id.value));
    }
  }
  for (const auto& [id, log] : app_data_) {
    if (!applications_.contains(id)) {
      return absl::InternalError(absl::StrCat(
          "received-data log for undeployed application ", id.value));
    }
  }
  return absl::OkStatus();
}

}  // namespace cnpverify
