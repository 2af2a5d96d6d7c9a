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

#ifndef CNPVERIFY_STATUS_MACROS_H_
#define CNPVERIFY_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define CNPV_RETURN_IF_ERROR(expr)              \
  do {                                          \
    if (absl::Status _cnpv_status = (expr);     \
        !_cnpv_status.ok()) {                   \
      return _cnpv_status;                      \
    }                                           \
  } while (false)

#define CNPV_CONCAT_INNER(a, b) a##b
#define CNPV_CONCAT(a, b) CNPV_CONCAT_INNER(a, b)

#define CNPV_ASSIGN_OR_RETURN(lhs, rexpr) \
  CNPV_ASSIGN_OR_RETURN_IMPL(CNPV_CONCAT(_cnpv_statusor_, __LINE__), lhs, rexpr)

#define CNPV_ASSIGN_OR_RETURN_IMPL(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                               \
  if (!statusor.ok()) return std::move(statusor).status(); \
  lhs = *std::move(statusor)

#endif  // CNPVERIFY_STATUS_MACROS_H_
