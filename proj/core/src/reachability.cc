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

#include "cnpverify/reachability.h"

#include <algorithm>

namespace cnpverify {

std::size_t ReachabilityMatrix::AllowedCount() const {
  return std::count_if(entries.begin(), entries.end(),
                       [](const ReachabilityEntry& e) {
                         return e.result.allowed();
                       });
}

ReachabilityMatrix ComputeReachability(const SystemState& state,
                                       const TransferOptions& options) {
  ReachabilityMatrix matrix;
  matrix.mode = options.mode;
  // std::map and std::set iterate in key order, so entries come out sorted.
  for (const auto& [sender_id, sender] : state.applications()) {
    if (sender.receive_only) continue;
    for (const auto& [receiver_id, receiver] : state.applications()) {
      if (receiver_id == sender_id) continue;
      for (const Endpoint& endpoint : receiver.listen_endpoints) {
        matrix.entries.push_back(ReachabilityEntry{
            sender_id, receiver_id, endpoint,
            CheckTransfer(state, sender_id, receiver_id, endpoint, options)});
      }
    }
  }
  return matrix;
}

}  // namespace cnpverify
