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

#ifndef CNPVERIFY_SENTINEL_H_
#define CNPVERIFY_SENTINEL_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "cnpverify/cidr.h"
#include "cnpverify/model.h"

namespace cnpverify {

// The fully-populated endpoint encoding used by VDM scenario scripts, where
// placeholders stand for "unconstrained":
//
//   cidr        0.0.0.0/0
//   namespace   name "-", id 0
//   port        0
//   label       ""
struct SentinelEndpoint {
  Cidr cidr;
  std::string namespace_name;
  std::uint32_t namespace_id = 0;
  int port = 0;
  std::string label;
};

inline constexpr absl::string_view kNoNamespaceName = "-";

// Maps exactly the placeholders above to absent fields. Everything else is
// kept and validated as usual.
absl::StatusOr<Endpoint> FromSentinels(const SentinelEndpoint& raw);

// Inverse of FromSentinels for every endpoint that does not itself hold a
// placeholder value (a present 0.0.0.0/0 or namespace "-"/0 come back absent).
SentinelEndpoint ToSentinels(const Endpoint& endpoint);

// Renders `endpoint` in VDM constructor syntax, e.g.
// mk_Endpoint(mk_CIDR(10,28,1,2,30), mk_Namespace("-",0), 0, "").
std::string FormatVdm(const Endpoint& endpoint);

}  // namespace cnpverify

#endif  // CNPVERIFY_SENTINEL_H_
