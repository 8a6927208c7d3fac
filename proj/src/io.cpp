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

#include "poflow/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

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

// Mutable accumulation state while reading one file.
struct PendingFlow {
  std::string id;
  std::vector<EntityId> entities;
  std::vector<std::pair<EntityId, EntityId>> channels;
  std::set<EntityId> declared;
};

void check_entity_token(const std::string& name, int line) {
  if (!is_valid_name(name)) {
    throw Error(Errc::InvalidEntityName, "bad entity name '" + name + "'", line);
  }
}

}  // namespace

FlowSystem parse_network(std::string_view text) {
  std::vector<PendingFlow> flows;
  std::vector<std::vector<EntityId>> splits;
  std::set<std::string> flow_ids;
  std::map<EntityId, std::string> owner;  // entity -> flow id
  bool splits_started = false;

  auto current = [&flows, &splits_started](const std::string& directive,
                                           int line) -> PendingFlow& {
    if (splits_started) {
      throw Error(Errc::SyntaxError, "'" + directive + "' after 'split'", line);
    }
    if (flows.empty()) {
      throw Error(Errc::SyntaxError, "'" + directive + "' before any 'flow'", line);
    }
    return flows.back();
  };

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
      if (splits_started) throw Error(Errc::SyntaxError, "'flow' after 'split'", line_no);
      if (tokens.size() != 2) throw Error(Errc::SyntaxError, "expected 'flow <id>'", line_no);
      if (!is_valid_name(tokens[1])) {
        throw Error(Errc::InvalidFlowId, "bad flow id '" + tokens[1] + "'", line_no);
      }
      if (!flow_ids.insert(tokens[1]).second) {
        throw Error(Errc::FlowIdCollision, "flow id '" + tokens[1] + "' used twice", line_no);
      }
      flows.push_back(PendingFlow{tokens[1], {}, {}, {}});
    } else if (directive == "entity") {
      PendingFlow& flow = current(directive, line_no);
      if (tokens.size() < 2) throw Error(Errc::SyntaxError, "'entity' needs a name", line_no);
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        check_entity_token(tokens[t], line_no);
        if (flow.declared.count(tokens[t])) {
          throw Error(Errc::DuplicateEntity,
                      "entity '" + tokens[t] + "' declared more than once in flow '" + flow.id +
                          "'",
                      line_no);
        }
        if (auto it = owner.find(tokens[t]); it != owner.end()) {
          throw Error(Errc::EntityInMultipleFlows,
                      "entity '" + tokens[t] + "' already belongs to flow '" + it->second + "'",
                      line_no);
        }
        flow.declared.insert(tokens[t]);
        flow.entities.push_back(tokens[t]);
        owner.emplace(tokens[t], flow.id);
      }
    } else if (directive == "channel" || directive == "bichannel") {
      PendingFlow& flow = current(directive, line_no);
      if (tokens.size() != 3) {
        throw Error(Errc::SyntaxError, "expected '" + directive + " <a> <b>'", line_no);
      }
      check_entity_token(tokens[1], line_no);
      check_entity_token(tokens[2], line_no);
      for (int t = 1; t <= 2; ++t) {
        if (!flow.declared.count(tokens[t])) {
          throw Error(Errc::UndeclaredEntity,
                      "entity '" + tokens[t] + "' is not declared in flow '" + flow.id + "'",
                      line_no);
        }
      }
      flow.channels.emplace_back(tokens[1], tokens[2]);
      if (directive == "bichannel") flow.channels.emplace_back(tokens[2], tokens[1]);
    } else if (directive == "split") {
      splits_started = true;
      std::vector<EntityId> group(tokens.begin() + 1, tokens.end());
      for (const EntityId& e : group) check_entity_token(e, line_no);
      std::sort(group.begin(), group.end());
      group.erase(std::unique(group.begin(), group.end()), group.end());
      if (group.size() < 2) {
        throw Error(Errc::SplitGroupTooSmall, "split group needs at least two distinct entities",
                    line_no);
      }
      std::set<std::string> group_flows;
      for (const EntityId& m : group) {
        auto it = owner.find(m);
        if (it == owner.end()) {
          throw Error(Errc::SplitMemberUnknown, "split member '" + m + "' is not in any flow",
                      line_no);
        }
        if (!group_flows.insert(it->second).second) {
          throw Error(Errc::SplitMembersSameFlow,
                      "split group has two members in flow '" + it->second + "'", line_no);
        }
      }
      splits.push_back(std::move(group));
    } else {
      throw Error(Errc::UnknownDirective, "unknown directive '" + directive + "'", line_no);
    }
  }

  std::vector<Network> networks;
  networks.reserve(flows.size());
  for (PendingFlow& flow : flows) {
    networks.push_back(
        build_network(std::move(flow.id), std::move(flow.entities), std::move(flow.channels)));
  }
  return build_flow_system(std::move(networks), std::move(splits));
}

std::string serialize(const FlowSystem& sys) {
  std::ostringstream out;
  for (const Network& net : sys.networks) {
    out << "flow " << net.flow_id << "\n";
    if (!net.entities.empty()) {
      out << "entity";
      for (const EntityId& e : net.entities) out << " " << e;
      out << "\n";
    }
    for (const Channel& c : net.channels) out << "channel " << c.src << " " << c.dst << "\n";
  }
  for (const auto& group : sys.split_groups) {
    out << "split";
    for (const EntityId& m : group) out << " " << m;
    out << "\n";
  }
  return out.str();
}

std::string render_labels(const LabelTable& table) {
  std::ostringstream out;
  for (const auto& [entity, label] : table.labels) {
    out << entity << ": " << label.to_string() << "\n";
  }
  return out.str();
}

std::string render_system_labels(const FlowSystem& sys) {
  std::ostringstream out;
  for (const Network& net : sys.networks) {
    out << "flow " << net.flow_id << "\n";
    out << render_labels(compute_labels(net));
  }
  return out.str();
}

std::string export_dot(const FlowSystem& sys) {
  static const char* kStyles[] = {"dashed", "dotted", "bold"};
  std::ostringstream out;
  out << "digraph flows {\n";
  for (std::size_t i = 0; i < sys.networks.size(); ++i) {
    const Network& net = sys.networks[i];
    const char* style = i == 0 ? "solid" : kStyles[(i - 1) % 3];
    out << "  // flow " << net.flow_id << "\n";
    for (const EntityId& e : net.entities) out << "  \"" << e << "\";\n";
    for (const Channel& c : net.channels) {
      out << "  \"" << c.src << "\" -> \"" << c.dst << "\" [style=" << style << "];\n";
    }
  }
  for (const auto& group : sys.split_groups) {
    out << "  { rank=same;";
    for (const EntityId& m : group) out << " \"" << m << "\";";
    out << " }\n";
    for (std::size_t i = 0; i + 1 < group.size(); ++i) {
      out << "  \"" << group[i] << "\" -> \"" << group[i + 1]
          << "\" [style=dotted, dir=none, constraint=false];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string render_conformance(const ConformanceReport& report) {
  std::ostringstream out;
  out << "conforms: " << (report.conforms ? "true" : "false") << "\n";
  for (const auto& [a, b] : report.missing_flows) out << "missing: " << a << " -> " << b << "\n";
  for (const auto& [a, b] : report.forbidden_flows) {
    out << "forbidden: " << a << " <-> " << b << "\n";
  }
  for (const auto& [a, b] : report.extra_flows) out << "extra: " << a << " -> " << b << "\n";
  return out.str();
}

namespace {

std::string render_candidates(const Poset& p, const std::vector<int>& candidates) {
  if (candidates.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i) out += ",";
    out += format_name_set(p.cls(static_cast<std::size_t>(candidates[i])).members);
  }
  return out;
}

}  // namespace

std::string render_lattice_report(const Poset& p, const LatticeReport& report) {
  std::ostringstream out;
  out << "is_lattice: " << (report.is_lattice ? "true" : "false") << "\n";
  for (const BoundFailure& f : report.join_failures) {
    out << "join failure: " << format_name_set(p.cls(static_cast<std::size_t>(f.a)).members) << ","
        << format_name_set(p.cls(static_cast<std::size_t>(f.b)).members) << " -> "
        << render_candidates(p, f.candidates) << "\n";
  }
  for (const BoundFailure& f : report.meet_failures) {
    out << "meet failure: " << format_name_set(p.cls(static_cast<std::size_t>(f.a)).members) << ","
        << format_name_set(p.cls(static_cast<std::size_t>(f.b)).members) << " -> "
        << render_candidates(p, f.candidates) << "\n";
  }
  return out.str();
}

std::string render_completion(const CompletionReport& report) {
  std::ostringstream out;
  out << "completion: original=" << report.original_size << " completed=" << report.completed_size
      << " void_labels=" << report.void_labels << "\n";
  for (int id : report.void_cut_ids) {
    out << "void: " << format_name_set(report.lattice.cls(static_cast<std::size_t>(id)).members)
        << "\n";
  }
  return out.str();
}

}  // namespace poflow
