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

#ifndef POFLOW_PDP_HPP_
#define POFLOW_PDP_HPP_

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "poflow/core.hpp"
#include "poflow/order.hpp"

namespace poflow {

// A request to move data from src to dst within one flow. op_tag is a free
// description of the concrete operation (copy, read, publish, ...) and is
// informational only: whether an operation moves data is decided by whoever
// writes the requests, not by the engine.
struct Request {
  std::string flow_id;
  EntityId src;
  EntityId dst;
  std::string op_tag;
};

enum class Verdict { Grant, Deny };

enum class Reason {
  LabelIncluded,
  LabelNotIncluded,
  UnknownEntity,
  UnknownFlow,
};

struct Decision {
  Verdict verdict = Verdict::Deny;
  Reason reason = Reason::UnknownEntity;

  bool granted() const { return verdict == Verdict::Grant; }

  bool operator==(const Decision&) const = default;
};

const char* verdict_name(Verdict v);  // "GRANT" / "DENY"
const char* reason_code(Reason r);    // "LABEL_INCLUDED", ...

struct AuditRecord {
  Request request;
  Decision decision;
  Label label_src;  // as stored at decision time; empty for unknown entities
  Label label_dst;
  std::uint64_t sequence_no = 0;
};

// `seq=<n> flow=<id> src=<e> dst=<e> verdict=<GRANT|DENY> reason=<code>`
std::string format_audit_line(const AuditRecord& record);

// The decision function: grant iff the label of src is included in the
// label of dst. Works from the label table alone and never throws, any
// lookup failure is a Deny.
Decision decide(const LabelTable& table, const EntityId& src, const EntityId& dst);

// System-level decision: selects the table named by the request and
// delegates. Unknown flows deny. Because flows have disjoint entity sets, a
// request that names entities of another flow denies with UnknownEntity,
// there is no cross-flow transfer inside the model.
Decision decide_system(const FlowSystem& sys, const std::map<std::string, LabelTable>& tables,
                       const Request& req);

// A decision session over one flow system: owns the computed label tables
// (the attribute store) and an append-only audit log. Decisions are pure;
// the log append is the only serialized point.
class PdpSession {
 public:
  explicit PdpSession(FlowSystem sys);

  const FlowSystem& system() const { return system_; }
  const std::map<std::string, LabelTable>& tables() const { return tables_; }

  // Evaluates the request and appends an audit record. Sequence numbers
  // start at 1 and strictly increase.
  std::pair<Decision, AuditRecord> evaluate_and_log(const Request& req);

  std::vector<AuditRecord> audit_log() const;

 private:
  FlowSystem system_;
  std::map<std::string, LabelTable> tables_;
  mutable std::mutex mu_;
  std::uint64_t next_seq_ = 1;
  std::vector<AuditRecord> log_;
};

// Named labels, so long provenance sets can be referred to the way a single
// word like "Classified" covers many documents.
class AliasStore {
 public:
  // Throws DuplicateAlias.
  void register_alias(const std::string& name, Label label);
  // Throws UnknownAlias.
  const Label& resolve_alias(const std::string& name) const;

  const std::map<std::string, Label>& aliases() const { return aliases_; }

 private:
  std::map<std::string, Label> aliases_;
};

}  // namespace poflow

#endif  // POFLOW_PDP_HPP_
