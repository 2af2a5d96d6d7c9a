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

#ifndef CNPVERIFY_CIDR_H_
#define CNPVERIFY_CIDR_H_

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace cnpverify {

// An IPv4 block written as four octets and a prefix length. The octets are
// kept verbatim, host bits included: 10.28.1.2/30 and 10.28.1.0/30 denote the
// same address range but are distinct values under structural equality.
class Cidr {
 public:
  // Fails with kInvalidCidr unless every octet is in [0, 255] and
  // `prefix_length` is in [0, 32].
  static absl::StatusOr<Cidr> Create(int block1, int block2, int block3,
                                     int block4, int prefix_length);

  // Parses dotted-quad "a.b.c.d/p". The prefix is mandatory. Fails with
  // kInvalidCidrString.
  static absl::StatusOr<Cidr> Parse(absl::string_view text);

  // A /32 host address.
  static Cidr Host(std::uint32_t address);

  const std::array<std::uint8_t, 4>& octets() const { return octets_; }
  int prefix_length() const { return prefix_length_; }

  // Big-endian integer form of the four octets.
  std::uint32_t address() const;
  // Netmask for `prefix_length()`; 0 for /0.
  std::uint32_t mask() const;
  // `address() & mask()`.
  std::uint32_t network() const;

  std::string ToString() const;

  friend bool operator==(const Cidr&, const Cidr&) = default;
  friend auto operator<=>(const Cidr&, const Cidr&) = default;

 private:
  Cidr(std::array<std::uint8_t, 4> octets, int prefix_length)
      : octets_(octets), prefix_length_(prefix_length) {}

  std::array<std::uint8_t, 4> octets_;
  int prefix_length_;
};

enum class Containment {
  kInside,
  kOutside,
  // `address` is a wider block than `block`; containment is not defined.
  kUndefined,
};

// Whether `address` lies inside `block`: the first `block.prefix_length()`
// bits of both agree. Callers normally pass /32 host addresses; any address
// with a prefix at least as long as the block's is accepted.
Containment CidrContains(const Cidr& block, const Cidr& address);

absl::string_view ContainmentName(Containment containment);

}  // namespace cnpverify

#endif  // CNPVERIFY_CIDR_H_
