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

#include "cnpverify/cidr.h"

#include <charconv>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "cnpverify/errors.h"

namespace cnpverify {
namespace {

// Strict decimal: digits only, no sign, no leading zeros beyond "0" itself.
bool ParseDecimal(absl::string_view text, int max_value, int& out) {
  if (text.empty() || text.size() > 3) return false;
  if (text.size() > 1 && text.front() == '0') return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() &&
         out <= max_value;
}

}  // namespace

absl::StatusOr<Cidr> Cidr::Create(int block1, int block2, int block3,
                                  int block4, int prefix_length) {
  for (int block : {block1, block2, block3, block4}) {
    if (block < 0 || block > 255) {
      return MakeError(ErrorCode::kInvalidCidr,
                       absl::StrCat("octet ", block, " outside [0, 255]"));
    }
  }
  if (prefix_length < 0 || prefix_length > 32) {
    return MakeError(
        ErrorCode::kInvalidCidr,
        absl::StrCat("prefix length ", prefix_length, " outside [0, 32]"));
  }
  return Cidr({static_cast<std::uint8_t>(block1),
               static_cast<std::uint8_t>(block2),
               static_cast<std::uint8_t>(block3),
               static_cast<std::uint8_t>(block4)},
              prefix_length);
}

absl::StatusOr<Cidr> Cidr::Parse(absl::string_view text) {
  auto invalid = [&] {
    return MakeError(ErrorCode::kInvalidCidrString,
                     absl::StrCat("'", text, "' is not a.b.c.d/prefix"));
  };
  std::vector<absl::string_view> halves = absl::StrSplit(text, '/');
  if (halves.size() != 2) return invalid();
  std::vector<absl::string_view> quads = absl::StrSplit(halves[0], '.');
  if (quads.size() != 4) return invalid();
  std::array<int, 4> blocks{};
  for (int i = 0; i < 4; ++i) {
    if (!ParseDecimal(quads[i], 255, blocks[i])) return invalid();
  }
  int prefix = 0;
  if (!ParseDecimal(halves[1], 32, prefix)) return invalid();
  return Cidr({static_cast<std::uint8_t>(blocks[0]),
               static_cast<std::uint8_t>(blocks[1]),
               static_cast<std::uint8_t>(blocks[2]),
               static_cast<std::uint8_t>(blocks[3])},
              prefix);
}

Cidr Cidr::Host(std::uint32_t address) {
  return Cidr({static_cast<std::uint8_t>(address >> 24),
               static_cast<std::uint8_t>(address >> 16),
               static_cast<std::uint8_t>(address >> 8),
               static_cast<std::uint8_t>(address)},
              32);
}

std::uint32_t Cidr::address() const {
  return (std::uint32_t{octets_[0]} << 24) | (std::uint32_t{octets_[1]} << 16) |
         (std::uint32_t{octets_[2]} << 8) | std::uint32_t{octets_[3]};
}

std::uint32_t Cidr::mask() const {
  // Shifting a 32-bit value by 32 is undefined.
  if (prefix_length_ == 0) return 0;
  return ~std::uint32_t{0} << (32 - prefix_length_);
}

std::uint32_t Cidr::network() const { return address() & mask(); }

std::string Cidr::ToString() const {
  return absl::StrCat(octets_[0], ".", octets_[1], ".", octets_[2], ".",
                      octets_[3], "/", prefix_length_);
}

Containment CidrContains(const Cidr& block, const Cidr& address) {
  if (address.prefix_length() < block.prefix_length()) {
    return Containment::kUndefined;
  }
  return (address.address() & block.mask()) == block.network()
             ? Containment::kInside
             : Containment::kOutside;
}

absl::string_view ContainmentName(Containment containment) {
  switch (containment) {
    case Containment::kInside:
      return "inside";
    case Containment::kOutside:
      return "outside";
    case Containment::kUndefined:
      return "undefined";
  }
  return "undefined";
}

}  // namespace cnpverify
