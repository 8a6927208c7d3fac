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

#ifndef POFLOW_IO_HPP_
#define POFLOW_IO_HPP_

#include <string>
#include <string_view>

#include "poflow/core.hpp"
#include "poflow/lattice.hpp"
#include "poflow/order.hpp"
#include "poflow/policy.hpp"

namespace poflow {

// Parses the network text format:
//   flow <id>                 starts a flow
//   entity <name> [...]       declares entities of the current flow
//   channel <src> <dst>       directed channel between declared entities
//   bichannel <a> <b>         shorthand for two opposite channels
//   split <e1> <e2> [...]     split-entity group; only after all flows
// '#' starts a comment. Entities must be declared before they are used.
// All structural errors carry the offending line number.
FlowSystem parse_network(std::string_view text);

// Canonical text for a system; parse_network(serialize(s)) == s.
std::string serialize(const FlowSystem& sys);

// One "<entity>: {provenance}" line per entity, sorted by name.
std::string render_labels(const LabelTable& table);

// Labels of every flow, each under its "flow <id>" header, in system order.
std::string render_system_labels(const FlowSystem& sys);

// Graphviz view of the system: one node per entity, channels as edges with
// a per-flow edge style, split groups ranked together and tied with
// undirected dotted edges.
std::string export_dot(const FlowSystem& sys);

std::string render_conformance(const ConformanceReport& report);

std::string render_lattice_report(const Poset& p, const LatticeReport& report);

std::string render_completion(const CompletionReport& report);

}  // namespace poflow

#endif  // POFLOW_IO_HPP_
