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

#include "poflow/pdp.hpp"

#include <sstream>
#include <utility>

#include "poflow/errors.hpp"

namespace poflow {

const char* verdict_name(Verdict v) {
  return v == Verdict::Grant ? "GRANT" : "DENY";
}

const char* reason_code(Reason r) {
  switch (r) {
    case Reason::LabelIncluded:
      return "LABEL_INCLUDED";
    case Reason::LabelNotIncluded:
      return "LABEL_NOT_INCLUDED";
    case Reason::UnknownEntity:
      return "UNKNOWN_ENTITY";
    case Reason::UnknownFlow:
      return "UNKNOWN_FLOW";
  }
  return "UNKNOWN_ENTITY";
}

std::string format_audit_line(const AuditRecord& record) {
  std::ostringstream out;
  out << "seq=" << record.sequence_no << " flow=" << record.request.flow_id
      << " src=" << record.request.src << " dst=" << record.request.dst
      << " verdict=" << verdict_name(record.decision.verdict)
      << " reason=" << reason_code(record.decision.reason);
  return out.str();
}

Decision decide(const LabelTable& table, const EntityId& src, const EntityId& dst) {
  const Label* ls = table.find(src);
  const Label* ld = table.find(dst);
  if (ls == nullptr || ld == nullptr) {
    return {Verdict::Deny, Reason::UnknownEntity};
  }
  if (ls->subset_of(*ld)) {
    return {Verdict::Grant, Reason::LabelIncluded};
  }
  return {Verdict::Deny, Reason::LabelNotIncluded};
}

Decision decide_system(const FlowSystem& sys, const std::map<std::string, LabelTable>& tables,
                       const Request& req) {
  if (sys.find_flow(req.flow_id) == nullptr) {
    return {Verdict::Deny, Reason::UnknownFlow};
  }
  auto it = tables.find(req.flow_id);
  if (it == tables.end()) {
    return {Verdict::Deny, Reason::UnknownFlow};
  }
  return decide(it->second, req.src, req.dst);
}

PdpSession::PdpSession(FlowSystem sys) : system_(std::move(sys)) {
  for (const Network& net : system_.networks) {
    tables_.emplace(net.flow_id, compute_labels(net));
  }
}

std::pair<Decision, AuditRecord> PdpSession::evaluate_and_log(const Request& req) {
  Decision decision = decide_system(system_, tables_, req);

  AuditRecord record;
  record.request = req;
  record.decision = decision;
  auto it = tables_.find(req.flow_id);
  if (it != tables_.end()) {
    if (const Label* l = it->second.find(req.src)) record.label_src = *l;
    if (const Label* l = it->second.find(req.dst)) record.label_dst = *l;
  }

  std::lock_guard<std::mutex> lock(mu_);
  record.sequence_no = next_seq_++;
  log_.push_back(record);
  return {decision, record};
}

std::vector<AuditRecord> PdpSession::audit_log() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

void AliasStore::register_alias(const std::string& name, Label label) {
  if (name.empty()) throw Error(Errc::EmptyEntityName, "alias name is empty");
  auto [it, inserted] = aliases_.emplace(name, std::move(label));
  if (!inserted) {
    throw Error(Errc::DuplicateAlias, "alias '" + name + "' is already registered");
  }
}

const Label& AliasStore::resolve_alias(const std::string& name) const {
  auto it = aliases_.find(name);
  if (it == aliases_.end()) {
    throw Error(Errc::UnknownAlias, "alias '" + name + "' is not registered");
  }
  return it->second;
}

}  // namespace poflow
