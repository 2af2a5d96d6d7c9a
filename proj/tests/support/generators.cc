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

#include "generators.h"

#include <algorithm>
#include <optional>
#include <string>

namespace cnpverify::testing {
namespace {

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[Uniform(rng, 0, static_cast<int>(items.size()) - 1)];
}

const std::vector<std::string>& PoolCidrs() {
  static const auto* const kCidrs = new std::vector<std::string>{
      "10.28.1.2/30", "10.28.1.4/30", "10.29.1.23/28", "192.168.0.1/32"};
  return *kCidrs;
}

}  // namespace

int Uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Cidr RandomCidr(Rng& rng, int min_prefix, int max_prefix) {
  return *Cidr::Create(Uniform(rng, 0, 255), Uniform(rng, 0, 255),
                       Uniform(rng, 0, 255), Uniform(rng, 0, 255),
                       Uniform(rng, min_prefix, max_prefix));
}

Endpoint PoolEndpoint(Rng& rng) {
  static const std::vector<std::string> kNamespaces = {"NS-UI", "NS-Command",
                                                       "NS-DB"};
  static const std::vector<int> kPorts = {443, 5443, 80};
  static const std::vector<std::string> kLabels = {"WebUI", "Command", "DAL"};
  while (true) {
    std::optional<Cidr> cidr;
    std::optional<Namespace> ns;
    std::optional<int> port;
    std::optional<std::string> label;
    if (Coin(rng, 0.4)) cidr = *Cidr::Parse(Pick(rng, PoolCidrs()));
    if (Coin(rng)) ns = *Namespace::Create(Pick(rng, kNamespaces), 1);
    if (Coin(rng, 0.4)) port = Pick(rng, kPorts);
    if (Coin(rng)) label = Pick(rng, kLabels);
    absl::StatusOr<Endpoint> endpoint = Endpoint::Create(cidr, ns, port, label);
    if (endpoint.ok()) return *endpoint;
  }
}

Endpoint WildEndpoint(Rng& rng) {
  // Includes JSON-special characters to exercise escaping.
  static const std::string kAlphabet = "abcXYZ019-_.=,/ \\\"";
  while (true) {
    std::optional<Cidr> cidr;
    std::optional<Namespace> ns;
    std::optional<int> port;
    std::optional<std::string> label;
    if (Coin(rng)) cidr = RandomCidr(rng);
    if (Coin(rng)) {
      std::string name;
      for (int i = Uniform(rng, 1, 8); i > 0; --i) {
        name += kAlphabet[Uniform(rng, 0, kAlphabet.size() - 1)];
      }
      const std::uint32_t id = Coin(rng) ? 1 : static_cast<std::uint32_t>(rng());
      ns = *Namespace::Create(name, id);
    }
    if (Coin(rng)) port = Uniform(rng, 1, 65535);
    if (Coin(rng)) {
      std::string text;
      for (int i = Uniform(rng, 1, 12); i > 0; --i) {
        text += kAlphabet[Uniform(rng, 0, kAlphabet.size() - 1)];
      }
      label = text;
    }
    absl::StatusOr<Endpoint> endpoint = Endpoint::Create(cidr, ns, port, label);
    if (endpoint.ok()) return *endpoint;
  }
}

Policy WildPolicy(Rng& rng) {
  std::optional<PolicyOrigin> origin;
  if (Coin(rng)) {
    origin = PolicyOrigin{.document = Coin(rng) ? "UIPolicy" : "Command-Policy",
                          .rule_index = Uniform(rng, 0, 5),
                          .section = Coin(rng) ? "ingress" : "egress"};
  }
  return Policy(WildEndpoint(rng), WildEndpoint(rng),
                Coin(rng) ? Direction::kIngress : Direction::kEgress, origin);
}

RandomSystem GenerateSystem(Rng& rng, const Limits& limits) {
  RandomSystem system;
  const int pool_size = Uniform(rng, 1, limits.max_endpoints + 2);
  while (static_cast<int>(system.pool.size()) < pool_size) {
    Endpoint endpoint = PoolEndpoint(rng);
    if (std::find(system.pool.begin(), system.pool.end(), endpoint) ==
        system.pool.end()) {
      system.pool.push_back(std::move(endpoint));
    }
  }
  // Deploy a prefix of the pool, at most max_endpoints.
  const int deployed = Uniform(
      rng, 0, std::min<int>(pool_size, limits.max_endpoints));
  for (int i = 0; i < deployed; ++i) system.state.InsertEndpoint(system.pool[i]);

  std::vector<std::uint64_t> ids = {1, 2, 3, 4, 5};
  std::shuffle(ids.begin(), ids.end(), rng);
  const int apps = Uniform(rng, 0, std::min<int>(limits.max_apps, 4));
  for (int i = 0; i < apps; ++i) {
    Application app{.id = AppId{ids[i]},
                    .send_endpoint = Pick(rng, system.pool),
                    .listen_endpoints = {},
                    .receive_only = Coin(rng, 0.25),
                    .applied_policies = {}};
    for (int n = Uniform(rng, 0, 2); n > 0; --n) {
      app.listen_endpoints.insert(Pick(rng, system.pool));
    }
    system.state.InsertApplication(std::move(app));
    system.ids.push_back(AppId{ids[i]});
  }
  system.ids.push_back(AppId{ids[4]});

  for (int n = Uniform(rng, 0, limits.max_policies); n > 0; --n) {
    system.state.InsertPolicy(RandomPolicyFor(rng, system));
  }
  return system;
}

RandomSystem WithoutPolicies(const RandomSystem& system) {
  RandomSystem out;
  out.pool = system.pool;
  out.ids = system.ids;
  for (const Endpoint& endpoint : system.state.endpoints()) {
    out.state.InsertEndpoint(endpoint);
  }
  for (const auto& [id, app] : system.state.applications()) {
    out.state.InsertApplication(app);
  }
  return out;
}

TransferQuery RandomQuery(Rng& rng, const RandomSystem& system) {
  return TransferQuery{Pick(rng, system.ids), Pick(rng, system.ids),
                       Pick(rng, system.pool)};
}

Policy RandomPolicyFor(Rng& rng, const RandomSystem& system) {
  const Endpoint& other = Pick(rng, system.pool);
  Endpoint self = Pick(rng, system.pool);
  if (!system.state.applications().empty() && Coin(rng, 0.7)) {
    auto it = system.state.applications().begin();
    std::advance(it,
                 Uniform(rng, 0, system.state.applications().size() - 1));
    self = it->second.send_endpoint;
  }
  // Ingress is (receiver, sender); egress is (sender, receiver).
  if (Coin(rng)) return Policy(other, self, Direction::kIngress);
  return Policy(self, other, Direction::kEgress);
}

}  // namespace cnpverify::testing
