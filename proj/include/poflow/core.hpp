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

#ifndef POFLOW_CORE_HPP_
#define POFLOW_CORE_HPP_

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace poflow {

// Entity names are nonempty, case-sensitive tokens over [A-Za-z0-9_-].
// Lexicographic string order is the canonical order used everywhere a
// deterministic rendering is needed.
using EntityId = std::string;

bool is_valid_name(std::string_view name);
void validate_entity_name(const EntityId& name);

// A directed permission to move data from src to dst. Self-channels are
// legal but inert: data can always reach its own holder.
struct Channel {
  EntityId src;
  EntityId dst;

  auto operator<=>(const Channel&) const = default;
};

// One data flow: a set of entities plus the channels among them.
// Canonical form after build_network: entities and channels are sorted and
// duplicate-free, and every channel endpoint is a declared entity. Values
// are immutable by convention once built; all analyses take them by
// const reference.
struct Network {
  std::string flow_id;
  std::vector<EntityId> entities;  // sorted, unique
  std::vector<Channel> channels;   // sorted, unique

  bool has_entity(const EntityId& name) const;
  bool has_channel(const EntityId& src, const EntityId& dst) const;

  bool operator==(const Network&) const = default;
};

// Several mutually disjoint flows plus split-entity metadata. A split group
// names parts of one real-world entity that live in different flows (for
// example a processing center and its statistics-only counterpart). The link
// between them is a trusted, out-of-model component: split groups never
// introduce channels and never affect reachability.
struct FlowSystem {
  std::vector<Network> networks;                    // distinct flow_ids, disjoint entities
  std::vector<std::vector<EntityId>> split_groups;  // each group sorted; groups sorted

  const Network* find_flow(const std::string& flow_id) const;
  const Network* flow_of_entity(const EntityId& name) const;

  bool operator==(const FlowSystem&) const = default;
};

// Validates and canonicalizes one flow. Duplicate channels collapse; the
// order of the input lists never affects the result.
// Throws: EmptyEntityName, InvalidEntityName, InvalidFlowId, DuplicateEntity,
// UndeclaredEntity.
Network build_network(std::string flow_id, std::vector<EntityId> entities,
                      std::vector<std::pair<EntityId, EntityId>> channels);

// Assembles validated flows into a system.
// Throws: FlowIdCollision, EntityInMultipleFlows, SplitGroupTooSmall,
// SplitMemberUnknown, SplitMembersSameFlow.
FlowSystem build_flow_system(std::vector<Network> networks,
                             std::vector<std::vector<EntityId>> split_groups);

}  // namespace poflow

#endif  // POFLOW_CORE_HPP_
