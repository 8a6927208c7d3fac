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

#include "poflow/order.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <utility>

#include "poflow/errors.hpp"

namespace poflow {

std::string format_name_set(const std::vector<EntityId>& names) {
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names[i];
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// Poset

Poset Poset::from_leq(std::vector<EquivClass> classes, std::vector<std::uint8_t> leq,
                      bool validate) {
  Poset p;
  p.classes_ = std::move(classes);
  p.leq_ = std::move(leq);
  if (p.leq_.size() != p.classes_.size() * p.classes_.size())
    throw std::invalid_argument("leq matrix size does not match class count");
  if (validate) {
    std::string why;
    if (!p.is_partial_order(&why)) throw std::invalid_argument("not a partial order: " + why);
  }
  return p;
}

const EquivClass& Poset::cls(std::size_t i) const {
  if (i >= classes_.size())
    throw Error(Errc::UnknownClass, "class index " + std::to_string(i) + " out of range");
  return classes_[i];
}

bool Poset::is_partial_order(std::string* why) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq(i, i)) {
      if (why) *why = "not reflexive at " + std::to_string(i);
      return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq(i, j) && leq(j, i)) {
        if (why) *why = "not antisymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return false;
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!leq(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (leq(j, k) && !leq(i, k)) {
          if (why)
            *why = "not transitive at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                   std::to_string(k) + ")";
          return false;
        }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Label / LabelTable

bool Label::subset_of(const Label& other) const {
  return std::includes(other.names.begin(), other.names.end(), names.begin(), names.end());
}

bool Label::contains(const EntityId& name) const {
  return std::binary_search(names.begin(), names.end(), name);
}

void Label::merge(const Label& other) {
  std::vector<EntityId> merged;
  merged.reserve(names.size() + other.names.size());
  std::set_union(names.begin(), names.end(), other.names.begin(), other.names.end(),
                 std::back_inserter(merged));
  names = std::move(merged);
}

const Label* LabelTable::find(const EntityId& name) const {
  auto it = labels.find(name);
  return it == labels.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Reachability

namespace {

struct IndexedGraph {
  const std::vector<EntityId>* names = nullptr;  // sorted, borrowed from the Network
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;

  int find(const EntityId& name) const {
    auto it = std::lower_bound(names->begin(), names->end(), name);
    if (it == names->end() || *it != name) return -1;
    return static_cast<int>(it - names->begin());
  }
};

IndexedGraph make_graph(const Network& net) {
  IndexedGraph g;
  g.names = &net.entities;
  g.out.resize(net.entities.size());
  g.in.resize(net.entities.size());
  for (const Channel& c : net.channels) {
    int s = g.find(c.src);
    int d = g.find(c.dst);
    if (s == d) continue;  // self-channels add nothing to reachability
    g.out[s].push_back(d);
    g.in[d].push_back(s);
  }
  return g;
}

int require_index(const IndexedGraph& g, const Network& net, const EntityId& name) {
  int i = g.find(name);
  if (i < 0)
    throw Error(Errc::UnknownEntity,
                "entity '" + name + "' is not part of flow '" + net.flow_id + "'");
  return i;
}

// Iterative DFS recording vertices in postorder.
void postorder_from(const std::vector<std::vector<int>>& adj, int start, std::vector<char>& seen,
                    std::vector<int>& order) {
  std::vector<std::pair<int, std::size_t>> stack;
  stack.emplace_back(start, 0);
  seen[start] = 1;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < adj[v].size()) {
      int w = adj[v][next++];
      if (!seen[w]) {
        seen[w] = 1;
        stack.emplace_back(w, 0);
      }
    } else {
      order.push_back(v);
      stack.pop_back();
    }
  }
}

std::vector<char> reachable_from_index(const IndexedGraph& g, int start) {
  std::vector<char> seen(g.out.size(), 0);
  std::vector<int> todo{start};
  seen[start] = 1;
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : g.out[v])
      if (!seen[w]) {
        seen[w] = 1;
        todo.push_back(w);
      }
  }
  return seen;
}

}  // namespace

bool can_flow(const Network& net, const EntityId& from, const EntityId& to) {
  IndexedGraph g = make_graph(net);
  int s = require_index(g, net, from);
  int t = require_index(g, net, to);
  if (s == t) return true;
  return reachable_from_index(g, s)[t] != 0;
}

// ---------------------------------------------------------------------------
// Condensation

Condensation condense(const Network& net) {
  IndexedGraph g = make_graph(net);
  const int n = static_cast<int>(net.entities.size());

  // Kosaraju: postorder on the forward graph, then sweep the reverse graph
  // in reverse postorder to peel off components.
  std::vector<int> finish;
  finish.reserve(n);
  {
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i)
      if (!seen[i]) postorder_from(g.out, i, seen, finish);
  }
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (comp[*it] != -1) continue;
    std::vector<int> todo{*it};
    comp[*it] = ncomp;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int w : g.in[v])
        if (comp[w] == -1) {
          comp[w] = ncomp;
          todo.push_back(w);
        }
    }
    ++ncomp;
  }

  // Entities are iterated in sorted order, so each member list comes out
  // sorted for free.
  std::vector<std::vector<EntityId>> members(ncomp);
  for (int i = 0; i < n; ++i) members[comp[i]].push_back(net.entities[i]);

  std::vector<std::set<int>> dag(ncomp);
  for (int v = 0; v < n; ++v)
    for (int w : g.out[v])
      if (comp[v] != comp[w]) dag[comp[v]].insert(comp[w]);

  // Class-level reachability (the strict part of the order plus identity).
  std::vector<std::vector<char>> reach(ncomp, std::vector<char>(ncomp, 0));
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> todo{c};
    reach[c][c] = 1;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int w : dag[v])
        if (!reach[c][w]) {
          reach[c][w] = 1;
          todo.push_back(w);
        }
    }
  }

  // Deterministic bottom-up numbering: Kahn's algorithm, ready classes
  // ordered by their smallest member name.
  std::vector<int> indegree(ncomp, 0);
  for (int c = 0; c < ncomp; ++c)
    for (int w : dag[c]) ++indegree[w];
  using Ready = std::pair<EntityId, int>;
  std::priority_queue<Ready, std::vector<Ready>, std::greater<>> ready;
  for (int c = 0; c < ncomp; ++c)
    if (indegree[c] == 0) ready.emplace(members[c].front(), c);
  std::vector<int> new_id(ncomp, -1);
  std::vector<int> topo;
  topo.reserve(ncomp);
  while (!ready.empty()) {
    int c = ready.top().second;
    ready.pop();
    new_id[c] = static_cast<int>(topo.size());
    topo.push_back(c);
    for (int w : dag[c])
      if (--indegree[w] == 0) ready.emplace(members[w].front(), w);
  }

  std::vector<EquivClass> classes(ncomp);
  std::vector<std::uint8_t> leq(static_cast<std::size_t>(ncomp) * ncomp, 0);
  for (int c = 0; c < ncomp; ++c) {
    classes[new_id[c]] = EquivClass{new_id[c], std::move(members[c])};
    for (int d = 0; d < ncomp; ++d)
      if (reach[c][d]) leq[static_cast<std::size_t>(new_id[c]) * ncomp + new_id[d]] = 1;
  }

  Condensation result;
  result.order = Poset::from_leq(std::move(classes), std::move(leq), /*validate=*/true);
  for (int i = 0; i < n; ++i) result.class_of.emplace(net.entities[i], new_id[comp[i]]);
  return result;
}

// ---------------------------------------------------------------------------
// Labels

LabelTable compute_labels(const Network& net) {
  Condensation cond = condense(net);
  const Poset& order = cond.order;
  const std::size_t n = order.size();

  // Class ids are a linear extension, so every strictly lower class has a
  // smaller index and its label is already final when we reach c.
  std::vector<Label> class_labels(n);
  for (std::size_t c = 0; c < n; ++c) {
    Label label;
    label.names = order.cls(c).members;
    for (std::size_t d = 0; d < c; ++d)
      if (order.leq(d, c)) label.merge(class_labels[d]);
    class_labels[c] = std::move(label);
  }

  LabelTable table;
  table.flow_id = net.flow_id;
  for (const auto& [entity, c] : cond.class_of) table.labels.emplace(entity, class_labels[c]);
  return table;
}

std::vector<EntityId> simulate_propagation(const Network& net, const EntityId& source) {
  if (!net.has_entity(source))
    throw Error(Errc::UnknownEntity,
                "entity '" + source + "' is not part of flow '" + net.flow_id + "'");
  std::set<EntityId> tokens{source};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Channel& c : net.channels) {
      if (tokens.count(c.src) && !tokens.count(c.dst)) {
        tokens.insert(c.dst);
        changed = true;
      }
    }
  }
  return std::vector<EntityId>(tokens.begin(), tokens.end());
}

}  // namespace poflow
