// Copyright 2026 The poflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared fixtures and independent oracles for the test binaries. Everything
// here recomputes results by the dumbest available method; nothing reuses
// the code paths under test.

#ifndef POFLOW_TESTS_HELPERS_HPP_
#define POFLOW_TESTS_HELPERS_HPP_

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poflow/core.hpp"
#include "poflow/order.hpp"

namespace poflow_test {

inline poflow::Network sales_network() {
  return poflow::build_network(
      "sales", {"S1", "S2", "S3", "S4", "P1", "P2", "P3", "A1", "A2"},
      {{"S1", "P1"},
       {"S2", "P2"},
       {"S3", "P3"},
       {"S4", "P3"},
       {"P1", "P2"},
       {"P2", "P1"},
       {"P3", "P2"},
       {"P2", "A1"},
       {"P2", "A2"}});
}

inline poflow::Network stats_network() {
  return poflow::build_network("stats", {"A1S", "A2S", "O"}, {{"A1S", "A2S"}, {"A1S", "O"}});
}

inline poflow::FlowSystem company_system() {
  return poflow::build_flow_system({sales_network(), stats_network()},
                                   {{"A1", "A1S"}, {"A2", "A2S"}});
}

// Frozen label table of the company fixture. Any change here is a breaking
// change of the engine, not a formatting detail.
inline const char* kCompanyLabels =
    "flow sales\n"
    "A1: {A1,P1,P2,P3,S1,S2,S3,S4}\n"
    "A2: {A2,P1,P2,P3,S1,S2,S3,S4}\n"
    "P1: {P1,P2,P3,S1,S2,S3,S4}\n"
    "P2: {P1,P2,P3,S1,S2,S3,S4}\n"
    "P3: {P3,S3,S4}\n"
    "S1: {S1}\n"
    "S2: {S2}\n"
    "S3: {S3}\n"
    "S4: {S4}\n"
    "flow stats\n"
    "A1S: {A1S}\n"
    "A2S: {A1S,A2S}\n"
    "O: {A1S,O}\n";

inline const char* kSalesPolicy =
    "flow sales\n"
    "permit S1 P1\n"
    "permit S2 P2\n"
    "permit S3 P3\n"
    "permit S4 P3\n"
    "permit P3 P2\n"
    "permit P2 A1\n"
    "permit P2 A2\n"
    "equiv P1 P2\n"
    "forbid A1 A2\n";

// Reflexive-transitive closure by Floyd-Warshall, the reference for every
// reachability claim in the tests.
struct ReachOracle {
  std::vector<poflow::EntityId> names;  // sorted
  std::vector<unsigned char> reach;

  bool can(const poflow::EntityId& a, const poflow::EntityId& b) const {
    auto ia = std::lower_bound(names.begin(), names.end(), a);
    auto ib = std::lower_bound(names.begin(), names.end(), b);
    if (ia == names.end() || *ia != a || ib == names.end() || *ib != b) {
      throw std::runtime_error("oracle: unknown entity");
    }
    return reach[static_cast<std::size_t>(ia - names.begin()) * names.size() +
                 static_cast<std::size_t>(ib - names.begin())] != 0;
  }
};

inline ReachOracle closure_oracle(const poflow::Network& net) {
  ReachOracle o;
  o.names = net.entities;
  const std::size_t n = o.names.size();
  o.reach.assign(n * n, 0);
  auto idx = [&o](const poflow::EntityId& e) {
    return static_cast<std::size_t>(
        std::lower_bound(o.names.begin(), o.names.end(), e) - o.names.begin());
  };
  for (std::size_t i = 0; i < n; ++i) o.reach[i * n + i] = 1;
  for (const poflow::Channel& c : net.channels) o.reach[idx(c.src) * n + idx(c.dst)] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!o.reach[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (o.reach[k * n + j]) o.reach[i * n + j] = 1;
    }
  return o;
}

inline poflow::Network random_network(std::mt19937& rng, int max_nodes, double edge_p = 0.3,
                                      const std::string& flow_id = "f",
                                      const std::string& prefix = "n") {
  std::uniform_int_distribution<int> size_dist(1, max_nodes);
  std::bernoulli_distribution edge(edge_p);
  std::bernoulli_distribution self(0.05);
  const int n = size_dist(rng);
  std::vector<poflow::EntityId> entities;
  for (int i = 0; i < n; ++i) entities.push_back(prefix + std::to_string(i));
  std::vector<std::pair<poflow::EntityId, poflow::EntityId>> channels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j ? self(rng) : edge(rng)) channels.emplace_back(entities[i], entities[j]);
    }
  return poflow::build_network(flow_id, std::move(entities), std::move(channels));
}

inline poflow::FlowSystem random_flow_system(std::mt19937& rng) {
  std::uniform_int_distribution<int> nflows_dist(1, 3);
  std::uniform_int_distribution<int> size_dist(0, 4);
  std::bernoulli_distribution edge(0.3);
  static const char* kFlowNames[] = {"alpha", "beta", "gamma"};
  static const char* kPrefixes[] = {"a", "b", "c"};
  const int nf = nflows_dist(rng);
  std::vector<poflow::Network> nets;
  for (int f = 0; f < nf; ++f) {
    const int n = size_dist(rng);
    std::vector<poflow::EntityId> entities;
    for (int i = 0; i < n; ++i) entities.push_back(kPrefixes[f] + std::to_string(i));
    std::vector<std::pair<poflow::EntityId, poflow::EntityId>> channels;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && edge(rng)) channels.emplace_back(entities[i], entities[j]);
    nets.push_back(poflow::build_network(kFlowNames[f], std::move(entities), std::move(channels)));
  }
  std::vector<std::vector<poflow::EntityId>> splits;
  if (nf >= 2 && !nets[0].entities.empty() && !nets[1].entities.empty()) {
    std::bernoulli_distribution with_split(0.5);
    if (with_split(rng)) {
      splits.push_back({nets[0].entities.front(), nets[1].entities.front()});
    }
  }
  return poflow::build_flow_system(std::move(nets), std::move(splits));
}

// A random poset whose given labeling is a linear extension: random strict
// edges only from lower to higher index, then transitive closure.
inline poflow::Poset random_poset(std::mt19937& rng, int n, double edge_p = 0.35) {
  std::bernoulli_distribution edge(edge_p);
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
  auto at = [&leq, n](int i, int j) -> std::uint8_t& {
    return leq[static_cast<std::size_t>(i) * n + j];
  };
  for (int i = 0; i < n; ++i) at(i, i) = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) at(i, j) = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!at(i, k)) continue;
      for (int j = 0; j < n; ++j)
        if (at(k, j)) at(i, j) = 1;
    }
  std::vector<poflow::EquivClass> classes(n);
  for (int i = 0; i < n; ++i) classes[i] = {i, {"e" + std::to_string(i)}};
  return poflow::Poset::from_leq(std::move(classes), std::move(leq), /*validate=*/true);
}

// All digraphs on n labeled nodes (self-loops excluded), as networks.
template <typename Fn>
void for_each_digraph(int n, Fn&& fn) {
  std::vector<poflow::EntityId> entities;
  for (int i = 0; i < n; ++i) entities.push_back("n" + std::to_string(i));
  const int bits = n * (n - 1);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << bits); ++mask) {
    std::vector<std::pair<poflow::EntityId, poflow::EntityId>> channels;
    int bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (mask & (std::uint32_t{1} << bit)) channels.emplace_back(entities[i], entities[j]);
        ++bit;
      }
    fn(poflow::build_network("f", entities, std::move(channels)));
  }
}

// All labeled posets on n elements: every antisymmetric transitive strict
// relation, turned reflexive. Classes are singletons e0..e<n-1>.
template <typename Fn>
void for_each_labeled_poset(int n, Fn&& fn) {
  std::vector<poflow::EquivClass> classes(n);
  for (int i = 0; i < n; ++i) classes[i] = {i, {"e" + std::to_string(i)}};
  const int bits = n * (n - 1);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << bits); ++mask) {
    std::vector<std::uint32_t> row(n, 0);
    int bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (mask & (std::uint32_t{1} << bit)) row[i] |= std::uint32_t{1} << j;
        ++bit;
      }
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        if (!(row[i] & (std::uint32_t{1} << j))) continue;
        if (row[j] & (std::uint32_t{1} << i)) ok = false;        // antisymmetry
        else if (row[j] & ~row[i]) ok = false;                   // transitivity
      }
    }
    if (!ok) continue;
    std::vector<std::uint8_t> leq(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        leq[static_cast<std::size_t>(i) * n + j] = (i == j || (row[i] & (std::uint32_t{1} << j))) ? 1 : 0;
    fn(poflow::Poset::from_leq(classes, std::move(leq), /*validate=*/true));
  }
}

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr merged
};

inline CmdResult run_cmd(const std::string& cmd) {
  std::string full = cmd + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + cmd);
  CmdResult result;
  char buf[4096];
  std::size_t nread;
  while ((nread = fread(buf, 1, sizeof buf, pipe)) > 0) result.output.append(buf, nread);
  int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

struct TempFile {
  std::string path;

  explicit TempFile(const std::string& content) {
    static std::atomic<int> counter{0};
    path = "/tmp/poflow_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter.fetch_add(1));
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace poflow_test

#endif  // POFLOW_TESTS_HELPERS_HPP_
