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

#include "poflow/core.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "poflow/errors.hpp"

namespace poflow {

namespace {

bool valid_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '-';
}

}  // namespace

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), valid_name_char);
}

void validate_entity_name(const EntityId& name) {
  if (name.empty()) throw Error(Errc::EmptyEntityName, "entity name is empty");
  if (!is_valid_name(name))
    throw Error(Errc::InvalidEntityName,
                "entity name '" + name + "' has characters outside [A-Za-z0-9_-]");
}

bool Network::has_entity(const EntityId& name) const {
  return std::binary_search(entities.begin(), entities.end(), name);
}

bool Network::has_channel(const EntityId& src, const EntityId& dst) const {
  return std::binary_search(channels.begin(), channels.end(), Channel{src, dst});
}

const Network* FlowSystem::find_flow(const std::string& flow_id) const {
  for (const Network& net : networks)
    if (net.flow_id == flow_id) return &net;
  return nullptr;
}

const Network* FlowSystem::flow_of_entity(const EntityId& name) const {
  for (const Network& net : networks)
    if (net.has_entity(name)) return &net;
  return nullptr;
}

Network build_network(std::string flow_id, std::vector<EntityId> entities,
                      std::vector<std::pair<EntityId, EntityId>> channels) {
  if (!is_valid_name(flow_id))
    throw Error(Errc::InvalidFlowId, "flow id '" + flow_id + "' is not a valid token");
  for (const EntityId& e : entities) validate_entity_name(e);

  std::sort(entities.begin(), entities.end());
  auto dup = std::adjacent_find(entities.begin(), entities.end());
  if (dup != entities.end())
    throw Error(Errc::DuplicateEntity,
                "entity '" + *dup + "' declared more than once in flow '" + flow_id + "'");

  Network net;
  net.flow_id = std::move(flow_id);
  net.entities = std::move(entities);
  net.channels.reserve(channels.size());
  for (auto& [src, dst] : channels) {
    if (!net.has_entity(src))
      throw Error(Errc::UndeclaredEntity,
                  "channel endpoint '" + src + "' is not declared in flow '" + net.flow_id + "'");
    if (!net.has_entity(dst))
      throw Error(Errc::UndeclaredEntity,
                  "channel endpoint '" + dst + "' is not declared in flow '" + net.flow_id + "'");
    net.channels.push_back(Channel{std::move(src), std::move(dst)});
  }
  std::sort(net.channels.begin(), net.channels.end());
  net.channels.erase(std::unique(net.channels.begin(), net.channels.end()), net.channels.end());
  return net;
}

FlowSystem build_flow_system(std::vector<Network> networks,
                             std::vector<std::vector<EntityId>> split_groups) {
  std::set<std::string> flow_ids;
  std::map<EntityId, std::size_t> owner;  // entity -> index into networks
  for (std::size_t i = 0; i < networks.size(); ++i) {
    if (!flow_ids.insert(networks[i].flow_id).second)
      throw Error(Errc::FlowIdCollision, "flow id '" + networks[i].flow_id + "' used twice");
    for (const EntityId& e : networks[i].entities) {
      auto [it, fresh] = owner.emplace(e, i);
      if (!fresh)
        throw Error(Errc::EntityInMultipleFlows,
                    "entity '" + e + "' appears in flows '" + networks[it->second].flow_id +
                        "' and '" + networks[i].flow_id + "'");
    }
  }

  for (auto& group : split_groups) {
    std::sort(group.begin(), group.end());
    group.erase(std::unique(group.begin(), group.end()), group.end());
    if (group.size() < 2)
      throw Error(Errc::SplitGroupTooSmall, "split group needs at least two distinct entities");
    std::set<std::size_t> flows_seen;
    for (const EntityId& m : group) {
      auto it = owner.find(m);
      if (it == owner.end())
        throw Error(Errc::SplitMemberUnknown, "split member '" + m + "' is not in any flow");
      if (!flows_seen.insert(it->second).second)
        throw Error(Errc::SplitMembersSameFlow,
                    "split group has two members in flow '" + networks[it->second].flow_id + "'");
    }
  }
  std::sort(split_groups.begin(), split_groups.end());
  split_groups.erase(std::unique(split_groups.begin(), split_groups.end()), split_groups.end());

  FlowSystem sys;
  sys.networks = std::move(networks);
  sys.split_groups = std::move(split_groups);
  return sys;
}

}  // namespace poflow
