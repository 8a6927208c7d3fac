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

#include "poflow/policy.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "poflow/errors.hpp"

namespace poflow {

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

void check_name(const std::string& name, int line) {
  if (!is_valid_name(name)) {
    throw Error(Errc::InvalidEntityName, "bad entity name '" + name + "'", line);
  }
}

// Reflexive-transitive closure of the permitted relation over the entities
// the policy mentions, used to detect forbids that the rest of the policy
// already implies.
struct IndexedClosure {
  std::vector<EntityId> names;
  std::vector<std::uint8_t> reach;  // names.size() x names.size()

  bool get(const EntityId& a, const EntityId& b) const {
    auto ia = std::lower_bound(names.begin(), names.end(), a);
    auto ib = std::lower_bound(names.begin(), names.end(), b);
    if (ia == names.end() || *ia != a || ib == names.end() || *ib != b) return a == b;
    std::size_t n = names.size();
    return reach[static_cast<std::size_t>(ia - names.begin()) * n +
                 static_cast<std::size_t>(ib - names.begin())] != 0;
  }
};

IndexedClosure close_permits(const std::vector<std::pair<EntityId, EntityId>>& permits,
                             const std::vector<std::vector<EntityId>>& equivs,
                             const std::vector<EntityId>& extra_names) {
  IndexedClosure c;
  std::set<EntityId> all(extra_names.begin(), extra_names.end());
  for (const auto& [s, d] : permits) {
    all.insert(s);
    all.insert(d);
  }
  for (const auto& group : equivs) all.insert(group.begin(), group.end());
  c.names.assign(all.begin(), all.end());
  const std::size_t n = c.names.size();
  auto index = [&c](const EntityId& e) {
    return static_cast<std::size_t>(
        std::lower_bound(c.names.begin(), c.names.end(), e) - c.names.begin());
  };
  c.reach.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) c.reach[i * n + i] = 1;
  for (const auto& [s, d] : permits) c.reach[index(s) * n + index(d)] = 1;
  for (const auto& group : equivs) {
    for (const EntityId& a : group) {
      for (const EntityId& b : group) c.reach[index(a) * n + index(b)] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.reach[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (c.reach[k * n + j]) c.reach[i * n + j] = 1;
      }
    }
  }
  return c;
}

}  // namespace

PolicySpec parse_policy(std::string_view text) {
  PolicySpec spec;
  bool flow_seen = false;
  struct ForbidAt {
    EntityId a, b;
    int line;
  };
  std::vector<ForbidAt> forbids_at;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string> tokens = split_tokens(line);
    if (tokens.empty()) continue;
    const std::string& directive = tokens[0];

    if (directive == "flow") {
      if (flow_seen) throw Error(Errc::SyntaxError, "'flow' declared twice", line_no);
      if (tokens.size() != 2) throw Error(Errc::SyntaxError, "expected 'flow <id>'", line_no);
      if (!is_valid_name(tokens[1])) {
        throw Error(Errc::InvalidFlowId, "bad flow id '" + tokens[1] + "'", line_no);
      }
      spec.flow_id = tokens[1];
      flow_seen = true;
      continue;
    }
    if (!flow_seen) {
      throw Error(Errc::SyntaxError, "policy must start with 'flow <id>'", line_no);
    }
    if (directive == "permit") {
      if (tokens.size() != 3) throw Error(Errc::SyntaxError, "expected 'permit <src> <dst>'", line_no);
      check_name(tokens[1], line_no);
      check_name(tokens[2], line_no);
      spec.permits.emplace_back(tokens[1], tokens[2]);
    } else if (directive == "equiv") {
      if (tokens.size() < 3) {
        throw Error(Errc::SyntaxError, "'equiv' needs at least two names", line_no);
      }
      std::vector<EntityId> group(tokens.begin() + 1, tokens.end());
      for (const EntityId& e : group) check_name(e, line_no);
      std::sort(group.begin(), group.end());
      group.erase(std::unique(group.begin(), group.end()), group.end());
      if (group.size() < 2) {
        throw Error(Errc::SyntaxError, "'equiv' needs at least two distinct names", line_no);
      }
      spec.equivs.push_back(std::move(group));
    } else if (directive == "forbid") {
      if (tokens.size() != 3) throw Error(Errc::SyntaxError, "expected 'forbid <a> <b>'", line_no);
      check_name(tokens[1], line_no);
      check_name(tokens[2], line_no);
      EntityId a = std::min(tokens[1], tokens[2]);
      EntityId b = std::max(tokens[1], tokens[2]);
      forbids_at.push_back({a, b, line_no});
    } else {
      throw Error(Errc::UnknownDirective, "unknown directive '" + directive + "'", line_no);
    }
  }
  if (!flow_seen) throw Error(Errc::SyntaxError, "policy declares no flow");

  IndexedClosure closure = close_permits(spec.permits, spec.equivs, {});
  for (const ForbidAt& f : forbids_at) {
    if (closure.get(f.a, f.b) || closure.get(f.b, f.a)) {
      throw Error(Errc::UnsatisfiableSpec,
                  "forbidden pair " + f.a + " / " + f.b + " is implied by the policy itself",
                  f.line);
    }
    spec.forbids.emplace_back(f.a, f.b);
  }

  std::sort(spec.permits.begin(), spec.permits.end());
  spec.permits.erase(std::unique(spec.permits.begin(), spec.permits.end()), spec.permits.end());
  std::sort(spec.equivs.begin(), spec.equivs.end());
  spec.equivs.erase(std::unique(spec.equivs.begin(), spec.equivs.end()), spec.equivs.end());
  std::sort(spec.forbids.begin(), spec.forbids.end());
  spec.forbids.erase(std::unique(spec.forbids.begin(), spec.forbids.end()), spec.forbids.end());
  return spec;
}

std::string serialize_policy(const PolicySpec& spec) {
  std::ostringstream out;
  out << "flow " << spec.flow_id << "\n";
  for (const auto& [s, d] : spec.permits) out << "permit " << s << " " << d << "\n";
  for (const auto& group : spec.equivs) {
    out << "equiv";
    for (const EntityId& e : group) out << " " << e;
    out << "\n";
  }
  for (const auto& [a, b] : spec.forbids) out << "forbid " << a << " " << b << "\n";
  return out.str();
}

ConformanceReport verify(const Network& net, const PolicySpec& spec) {
  if (net.flow_id != spec.flow_id) {
    throw Error(Errc::FlowMismatch, "policy is for flow '" + spec.flow_id +
                                        "', network is flow '" + net.flow_id + "'");
  }
  auto require_known = [&net](const EntityId& e) {
    if (!net.has_entity(e)) {
      throw Error(Errc::UnknownEntity,
                  "policy names entity '" + e + "' which is not part of flow '" + net.flow_id + "'");
    }
  };
  for (const auto& [s, d] : spec.permits) {
    require_known(s);
    require_known(d);
  }
  for (const auto& group : spec.equivs) {
    for (const EntityId& e : group) require_known(e);
  }
  for (const auto& [a, b] : spec.forbids) {
    require_known(a);
    require_known(b);
  }

  IndexedClosure expected = close_permits(spec.permits, spec.equivs, net.entities);
  LabelTable actual = compute_labels(net);
  auto realizes = [&actual](const EntityId& a, const EntityId& b) {
    return actual.find(b)->contains(a);
  };

  ConformanceReport report;
  std::set<std::pair<EntityId, EntityId>> forbidden_hits;
  for (const auto& [a, b] : spec.forbids) {
    if (realizes(a, b) || realizes(b, a)) {
      report.forbidden_flows.emplace_back(a, b);
      forbidden_hits.emplace(a, b);
      forbidden_hits.emplace(b, a);
    }
  }
  for (const EntityId& a : net.entities) {
    for (const EntityId& b : net.entities) {
      if (a == b) continue;
      bool want = expected.get(a, b);
      bool have = realizes(a, b);
      if (want && !have) report.missing_flows.emplace_back(a, b);
      // A realized forbidden pair is a violation already reported above,
      // not a second time as an excess.
      if (have && !want && !forbidden_hits.count({a, b})) report.extra_flows.emplace_back(a, b);
    }
  }
  report.conforms = report.missing_flows.empty() && report.forbidden_flows.empty() &&
                    report.extra_flows.empty();
  return report;
}

namespace {

void require_in_flow(const Network& net, const EntityId& e) {
  if (!net.has_entity(e)) {
    throw Error(Errc::UnknownEntity,
                "entity '" + e + "' is not part of flow '" + net.flow_id + "'");
  }
}

}  // namespace

EditResult add_channel(const Network& net, const LabelTable& table, const EntityId& src,
                       const EntityId& dst) {
  require_in_flow(net, src);
  require_in_flow(net, dst);
  if (table.flow_id != net.flow_id || table.find(src) == nullptr || table.find(dst) == nullptr) {
    throw Error(Errc::FlowMismatch, "label table does not match flow '" + net.flow_id + "'");
  }
  if (net.has_channel(src, dst)) {
    return {net, table};
  }

  std::vector<std::pair<EntityId, EntityId>> channels;
  channels.reserve(net.channels.size() + 1);
  for (const Channel& c : net.channels) channels.emplace_back(c.src, c.dst);
  channels.emplace_back(src, dst);
  Network updated = build_network(net.flow_id, net.entities, std::move(channels));

  // Everything downstream of dst in the old network absorbs src's old
  // label; nothing else changes. The old reachable set is the right one:
  // the new edge only adds paths that pass through src -> dst, and those
  // end exactly in this set.
  EditResult result{std::move(updated), table};
  Label src_label = *table.find(src);

  std::map<EntityId, std::vector<const EntityId*>> out;
  for (const Channel& c : net.channels) out[c.src].push_back(&c.dst);
  std::set<EntityId> seen{dst};
  std::queue<EntityId> work;
  work.push(dst);
  while (!work.empty()) {
    EntityId cur = std::move(work.front());
    work.pop();
    result.table.labels[cur].merge(src_label);
    auto it = out.find(cur);
    if (it == out.end()) continue;
    for (const EntityId* next : it->second) {
      if (seen.insert(*next).second) work.push(*next);
    }
  }
  return result;
}

EditResult remove_channel(const Network& net, const EntityId& src, const EntityId& dst) {
  require_in_flow(net, src);
  require_in_flow(net, dst);
  if (!net.has_channel(src, dst)) {
    throw Error(Errc::UnknownChannel, "channel '" + src + " -> " + dst +
                                          "' is not part of flow '" + net.flow_id + "'");
  }
  std::vector<std::pair<EntityId, EntityId>> channels;
  channels.reserve(net.channels.size() - 1);
  for (const Channel& c : net.channels) {
    if (c.src == src && c.dst == dst) continue;
    channels.emplace_back(c.src, c.dst);
  }
  Network updated = build_network(net.flow_id, net.entities, std::move(channels));
  LabelTable table = compute_labels(updated);
  return {std::move(updated), std::move(table)};
}

}  // namespace poflow
