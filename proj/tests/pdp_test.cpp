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

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "poflow/errors.hpp"

using namespace poflow;
using poflow_test::closure_oracle;
using poflow_test::company_system;
using poflow_test::random_network;
using poflow_test::sales_network;

TEST_CASE("decide on the sales flow") {
  LabelTable table = compute_labels(sales_network());

  CHECK(decide(table, "S1", "A1") == Decision{Verdict::Grant, Reason::LabelIncluded});
  CHECK(decide(table, "P1", "P2") == Decision{Verdict::Grant, Reason::LabelIncluded});
  CHECK(decide(table, "A1", "A1") == Decision{Verdict::Grant, Reason::LabelIncluded});
  CHECK(decide(table, "A1", "S1") == Decision{Verdict::Deny, Reason::LabelNotIncluded});
  CHECK(decide(table, "A1", "A2") == Decision{Verdict::Deny, Reason::LabelNotIncluded});
  CHECK(decide(table, "S1", "S2") == Decision{Verdict::Deny, Reason::LabelNotIncluded});

  // fail closed, never throw
  CHECK(decide(table, "ghost", "A1") == Decision{Verdict::Deny, Reason::UnknownEntity});
  CHECK(decide(table, "S1", "ghost") == Decision{Verdict::Deny, Reason::UnknownEntity});
  CHECK(decide(table, "", "") == Decision{Verdict::Deny, Reason::UnknownEntity});
}

TEST_CASE("decide agrees with reachability on random networks") {
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 150; ++iter) {
    Network net = random_network(rng, 7);
    LabelTable table = compute_labels(net);
    auto oracle = closure_oracle(net);
    for (const EntityId& a : net.entities)
      for (const EntityId& b : net.entities) {
        Decision d = decide(table, a, b);
        REQUIRE(d.granted() == oracle.can(a, b));
        // the one grant reason and the verdict can never disagree
        REQUIRE(d.granted() == (d.reason == Reason::LabelIncluded));
      }
  }
}

TEST_CASE("decide_system separates flows") {
  FlowSystem sys = company_system();
  std::map<std::string, LabelTable> tables;
  for (const Network& net : sys.networks) tables.emplace(net.flow_id, compute_labels(net));

  CHECK(decide_system(sys, tables, {"sales", "S1", "A1", ""}).granted());
  CHECK(decide_system(sys, tables, {"stats", "A1S", "O", ""}).granted());
  CHECK(decide_system(sys, tables, {"stats", "A1S", "A2S", ""}).granted());

  // the split entities are distinct subjects; no flow crosses between them
  CHECK(decide_system(sys, tables, {"sales", "S1", "A1S", ""}) ==
        Decision{Verdict::Deny, Reason::UnknownEntity});
  CHECK(decide_system(sys, tables, {"sales", "S1", "O", ""}) ==
        Decision{Verdict::Deny, Reason::UnknownEntity});
  CHECK(decide_system(sys, tables, {"stats", "S1", "O", ""}) ==
        Decision{Verdict::Deny, Reason::UnknownEntity});
  CHECK(decide_system(sys, tables, {"audit", "S1", "A1", ""}) ==
        Decision{Verdict::Deny, Reason::UnknownFlow});
}

TEST_CASE("audit line format") {
  AuditRecord record;
  record.request = {"sales", "S1", "A1", "copy"};
  record.decision = {Verdict::Grant, Reason::LabelIncluded};
  record.sequence_no = 12;
  CHECK(format_audit_line(record) ==
        "seq=12 flow=sales src=S1 dst=A1 verdict=GRANT reason=LABEL_INCLUDED");

  record.request = {"sales", "A1", "A2", ""};
  record.decision = {Verdict::Deny, Reason::LabelNotIncluded};
  record.sequence_no = 13;
  CHECK(format_audit_line(record) ==
        "seq=13 flow=sales src=A1 dst=A2 verdict=DENY reason=LABEL_NOT_INCLUDED");
}

TEST_CASE("PdpSession logs every decision in order") {
  PdpSession session(company_system());
  CHECK(session.tables().size() == 2);

  auto [d1, r1] = session.evaluate_and_log({"sales", "S1", "A1", "copy"});
  auto [d2, r2] = session.evaluate_and_log({"sales", "A1", "A2", "copy"});
  auto [d3, r3] = session.evaluate_and_log({"nowhere", "S1", "A1", ""});

  CHECK(d1.granted());
  CHECK_FALSE(d2.granted());
  CHECK(d3.reason == Reason::UnknownFlow);
  CHECK(r1.sequence_no == 1);
  CHECK(r2.sequence_no == 2);
  CHECK(r3.sequence_no == 3);
  CHECK(r1.label_src.names == std::vector<EntityId>{"S1"});
  CHECK(r1.label_dst.contains("P3"));
  CHECK(r3.label_src.names.empty());  // unknown flow, no labels to record

  auto log = session.audit_log();
  REQUIRE(log.size() == 3);
  CHECK(log[0].sequence_no == 1);
  CHECK(log[1].request.src == "A1");
  CHECK(format_audit_line(log[2]) ==
        "seq=3 flow=nowhere src=S1 dst=A1 verdict=DENY reason=UNKNOWN_FLOW");
}

TEST_CASE("alias store") {
  AliasStore store;
  store.register_alias("classified", Label{{"P1", "P2", "S1"}});
  CHECK(store.resolve_alias("classified").contains("P2"));
  CHECK_THROWS_AS(store.register_alias("classified", Label{}), Error);
  CHECK_THROWS_AS((void)store.resolve_alias("public"), Error);
  try {
    (void)store.resolve_alias("public");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownAlias);
  }
  CHECK(store.aliases().size() == 1);
}
