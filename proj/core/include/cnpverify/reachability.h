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

#ifndef CNPVERIFY_REACHABILITY_H_
#define CNPVERIFY_REACHABILITY_H_

#include <cstddef>
#include <vector>

#include "cnpverify/model.h"
#include "cnpverify/scenario.h"
#include "cnpverify/system_state.h"

namespace cnpverify {

struct ReachabilityEntry {
  AppId sender;
  AppId receiver;
  Endpoint endpoint;
  TransferResult result;
};

struct ReachabilityMatrix {
  MatchMode mode = MatchMode::kStrict;
  // Ordered by (sender, receiver, endpoint).
  std::vector<ReachabilityEntry> entries;

  std::size_t AllowedCount() const;
};

// Checks every flow from a sending application to each listen endpoint of
// every other application. Receive-only applications are not senders. The
// state is not modified.
ReachabilityMatrix ComputeReachability(const SystemState& state,
                                       const TransferOptions& options);

}  // namespace cnpverify

#endif  // CNPVERIFY_REACHABILITY_H_
