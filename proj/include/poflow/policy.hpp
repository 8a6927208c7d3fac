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

#ifndef POFLOW_POLICY_HPP_
#define POFLOW_POLICY_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poflow/core.hpp"
#include "poflow/order.hpp"

namespace poflow {

// Declarative statement of intended flows for one flow, independent of any
// network realizing it. Everything not derivable from permits and equivs is
// denied by default; forbids make selected denials explicit so that an
// implementation granting them is flagged as a violation rather than a mere
// excess.
struct PolicySpec {
  std::string flow_id;
  std::vector<std::pair<EntityId, EntityId>> permits;   // directed, sorted
  std::vector<std::vector<EntityId>> equivs;            // groups of >= 2
  std::vector<std::pair<EntityId, EntityId>> forbids;   // unordered pairs, (min,max)

  bool operator==(const PolicySpec&) const = default;
};

// Parses the policy text format:
//   flow <id>            exactly one, first
//   permit <src> <dst>
//   equiv <e1> <e2> ...  at least two names
//   forbid <a> <b>
// '#' starts a comment. Throws SyntaxError / UnknownDirective with line
// numbers, and UnsatisfiableSpec when a forbidden pair is already implied
// by the permits and equivalences.
PolicySpec parse_policy(std::string_view text);

std::string serialize_policy(const PolicySpec& spec);

struct ConformanceReport {
  bool conforms = false;
  // Flows required by the policy that the network does not realize.
  std::vector<std::pair<EntityId, EntityId>> missing_flows;
  // Forbidden pairs the network realizes (in either direction).
  std::vector<std::pair<EntityId, EntityId>> forbidden_flows;
  // Flows the network realizes that the policy does not derive.
  std::vector<std::pair<EntityId, EntityId>> extra_flows;
};

// Compares what the network lets flow against what the policy intends.
// The intended relation is the reflexive-transitive closure of the permits
// plus both directions inside each equiv group. Throws FlowMismatch when
// ids differ and UnknownEntity when the policy names entities the network
// lacks.
ConformanceReport verify(const Network& net, const PolicySpec& spec);

struct EditResult {
  Network net;
  LabelTable table;
};

// Adds a channel and relabels incrementally: everything previously
// reachable from dst absorbs src's old label. No other label changes, so
// the touched set is exactly the downstream cone of dst. Adding an existing
// channel is a no-op.
EditResult add_channel(const Network& net, const LabelTable& table, const EntityId& src,
                       const EntityId& dst);

// Removes a channel. Labels can only shrink and which provenance survives
// depends on alternative paths, so this recomputes from scratch. Throws
// UnknownChannel when the channel is not present.
EditResult remove_channel(const Network& net, const EntityId& src, const EntityId& dst);

}  // namespace poflow

#endif  // POFLOW_POLICY_HPP_
