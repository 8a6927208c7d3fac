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

// poflow: command line front end for the data-flow analyses.
// Exit codes: 0 success, 1 negative analysis result (deny, nonconformance,
// failed lattice expectation), 2 usage or input errors.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "poflow/core.hpp"
#include "poflow/errors.hpp"
#include "poflow/io.hpp"
#include "poflow/lattice.hpp"
#include "poflow/order.hpp"
#include "poflow/pdp.hpp"
#include "poflow/policy.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

poflow::FlowSystem load_system(const std::string& path) {
  return poflow::parse_network(read_file(path));
}

const poflow::Network& single_flow(const poflow::FlowSystem& sys, const std::string& path) {
  if (sys.networks.size() != 1) {
    throw poflow::Error(poflow::Errc::FlowMismatch,
                        "'" + path + "' must contain exactly one flow, has " +
                            std::to_string(sys.networks.size()));
  }
  return sys.networks.front();
}

const poflow::Network& flow_of(const poflow::FlowSystem& sys, const poflow::EntityId& entity) {
  const poflow::Network* net = sys.flow_of_entity(entity);
  if (net == nullptr) {
    throw poflow::Error(poflow::Errc::UnknownEntity,
                        "entity '" + entity + "' is not part of any flow");
  }
  return *net;
}

// Replaces one network of the system, keeping flow order and split groups.
poflow::FlowSystem with_network(const poflow::FlowSystem& sys, poflow::Network replacement) {
  std::vector<poflow::Network> networks = sys.networks;
  for (poflow::Network& net : networks) {
    if (net.flow_id == replacement.flow_id) {
      net = std::move(replacement);
      return poflow::build_flow_system(std::move(networks), sys.split_groups);
    }
  }
  throw poflow::Error(poflow::Errc::UnknownFlow, "flow '" + replacement.flow_id + "' not found");
}

int cmd_labels(const std::string& netfile, const std::string& flow_id) {
  poflow::FlowSystem sys = load_system(netfile);
  if (flow_id.empty()) {
    std::cout << poflow::render_system_labels(sys);
    return 0;
  }
  const poflow::Network* net = sys.find_flow(flow_id);
  if (net == nullptr) {
    throw poflow::Error(poflow::Errc::UnknownFlow, "flow '" + flow_id + "' is not defined");
  }
  std::cout << poflow::render_labels(poflow::compute_labels(*net));
  return 0;
}

int cmd_decide(const std::string& netfile, const poflow::Request& req,
               const std::string& audit_path) {
  poflow::FlowSystem sys = load_system(netfile);
  std::map<std::string, poflow::LabelTable> tables;
  for (const poflow::Network& net : sys.networks) {
    tables.emplace(net.flow_id, poflow::compute_labels(net));
  }
  poflow::Decision decision = poflow::decide_system(sys, tables, req);
  std::cout << "flow=" << req.flow_id << " src=" << req.src << " dst=" << req.dst
            << " verdict=" << poflow::verdict_name(decision.verdict)
            << " reason=" << poflow::reason_code(decision.reason) << "\n";

  if (!audit_path.empty()) {
    std::uint64_t seq = 1;
    {
      std::ifstream in(audit_path);
      std::string line;
      while (std::getline(in, line)) ++seq;
    }
    poflow::AuditRecord record;
    record.request = req;
    record.decision = decision;
    record.sequence_no = seq;
    if (auto it = tables.find(req.flow_id); it != tables.end()) {
      if (const poflow::Label* l = it->second.find(req.src)) record.label_src = *l;
      if (const poflow::Label* l = it->second.find(req.dst)) record.label_dst = *l;
    }
    std::ofstream out(audit_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open file '" + audit_path + "'");
    out << poflow::format_audit_line(record) << "\n";
  }
  return decision.granted() ? 0 : 1;
}

int cmd_check(const std::string& netfile, const std::string& policyfile) {
  poflow::FlowSystem sys = load_system(netfile);
  poflow::PolicySpec spec = poflow::parse_policy(read_file(policyfile));
  const poflow::Network* net = sys.find_flow(spec.flow_id);
  if (net == nullptr) {
    throw poflow::Error(poflow::Errc::UnknownFlow,
                        "flow '" + spec.flow_id + "' is not defined in '" + netfile + "'");
  }
  poflow::ConformanceReport report = poflow::verify(*net, spec);
  std::cout << poflow::render_conformance(report);
  return report.conforms ? 0 : 1;
}

int cmd_lattice(const std::string& netfile, const std::string& flow_id, bool complete,
                bool expect_lattice) {
  poflow::FlowSystem sys = load_system(netfile);
  bool all_lattice = true;
  bool any = false;
  for (const poflow::Network& net : sys.networks) {
    if (!flow_id.empty() && net.flow_id != flow_id) continue;
    any = true;
    poflow::Condensation cond = poflow::condense(net);
    poflow::LatticeReport report = poflow::lattice_check(cond.order);
    all_lattice = all_lattice && report.is_lattice;
    std::cout << "flow " << net.flow_id << "\n";
    std::cout << poflow::render_lattice_report(cond.order, report);
    if (complete) {
      std::cout << poflow::render_completion(poflow::dedekind_macneille(cond.order));
    }
  }
  if (!any && !flow_id.empty()) {
    throw poflow::Error(poflow::Errc::UnknownFlow, "flow '" + flow_id + "' is not defined");
  }
  return expect_lattice && !all_lattice ? 1 : 0;
}

int cmd_merge(const std::string& file_a, const std::string& file_b, bool allow_shared,
              const std::string& merged_id) {
  poflow::FlowSystem sys_a = load_system(file_a);
  poflow::FlowSystem sys_b = load_system(file_b);
  poflow::Network merged = poflow::merge_networks(single_flow(sys_a, file_a),
                                                  single_flow(sys_b, file_b), allow_shared,
                                                  merged_id);
  std::cout << poflow::serialize(poflow::build_flow_system({std::move(merged)}, {}));
  return 0;
}

int cmd_extract(const std::string& netfile, const std::vector<std::string>& keep) {
  poflow::FlowSystem sys = load_system(netfile);
  const poflow::Network& net = flow_of(sys, keep.front());
  poflow::Network sub = poflow::induced_subnetwork(net, keep);
  std::cout << poflow::serialize(poflow::build_flow_system({std::move(sub)}, {}));
  return 0;
}

int cmd_dot(const std::string& netfile) {
  std::cout << poflow::export_dot(load_system(netfile));
  return 0;
}

int cmd_simulate(const std::string& netfile, const std::string& flow,
                 const std::string& source) {
  poflow::FlowSystem sys = load_system(netfile);
  const poflow::Network* net = sys.find_flow(flow);
  if (net == nullptr) {
    throw poflow::Error(poflow::Errc::UnknownFlow, "flow '" + flow + "' is not in the system");
  }
  std::cout << poflow::format_name_set(poflow::simulate_propagation(*net, source)) << "\n";
  return 0;
}

int cmd_edit(const std::string& netfile, bool add, const std::string& src,
             const std::string& dst) {
  poflow::FlowSystem sys = load_system(netfile);
  const poflow::Network& net_src = flow_of(sys, src);
  const poflow::Network& net_dst = flow_of(sys, dst);
  if (&net_src != &net_dst) {
    throw poflow::Error(poflow::Errc::FlowMismatch, "entities '" + src + "' and '" + dst +
                                                        "' belong to different flows");
  }
  poflow::EditResult result;
  if (add) {
    result = poflow::add_channel(net_src, poflow::compute_labels(net_src), src, dst);
  } else {
    result = poflow::remove_channel(net_src, src, dst);
  }
  std::cout << poflow::serialize(with_network(sys, std::move(result.net)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial-order data-flow analysis"};
  app.require_subcommand(1);

  std::string netfile;
  std::string policyfile;
  std::string flow_id;
  std::string src;
  std::string dst;
  std::string op_tag;
  std::string audit_path;
  std::string merge_b;
  std::string merged_id;
  std::vector<std::string> keep;
  bool complete = false;
  bool expect_lattice = false;
  bool allow_shared = false;
  bool do_add = false;
  bool do_remove = false;

  CLI::App* labels = app.add_subcommand("labels", "print the provenance label of every entity");
  labels->add_option("net", netfile, "network file")->required();
  labels->add_option("--flow", flow_id, "restrict to one flow");

  CLI::App* decide = app.add_subcommand("decide", "decide one transfer request");
  decide->add_option("net", netfile, "network file")->required();
  decide->add_option("flow", flow_id, "flow id")->required();
  decide->add_option("src", src, "source entity")->required();
  decide->add_option("dst", dst, "destination entity")->required();
  decide->add_option("--audit", audit_path, "append an audit line to this file");
  decide->add_option("--op", op_tag, "operation tag recorded with the request");

  CLI::App* check = app.add_subcommand("check", "verify a network against a policy");
  check->add_option("net", netfile, "network file")->required();
  check->add_option("policy", policyfile, "policy file")->required();

  CLI::App* lattice = app.add_subcommand("lattice", "check which flows form lattices");
  lattice->add_option("net", netfile, "network file")->required();
  lattice->add_option("--flow", flow_id, "restrict to one flow");
  lattice->add_flag("--complete", complete, "also print the lattice completion");
  lattice->add_flag("--expect-lattice", expect_lattice, "exit 1 when a flow is not a lattice");

  CLI::App* merge = app.add_subcommand("merge", "merge two single-flow files");
  merge->add_option("net-a", netfile, "first network file")->required();
  merge->add_option("net-b", merge_b, "second network file")->required();
  merge->add_flag("--allow-shared", allow_shared, "identify same-named entities");
  merge->add_option("--flow-id", merged_id, "flow id of the result");

  CLI::App* extract = app.add_subcommand("extract", "restrict one flow to chosen entities");
  extract->add_option("net", netfile, "network file")->required();
  extract->add_option("entities", keep, "entities to keep")->required()->expected(-1);

  CLI::App* dot = app.add_subcommand("dot", "emit the system as Graphviz");
  dot->add_option("net", netfile, "network file")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "propagate a token from one entity");
  simulate->add_option("net", netfile, "network file")->required();
  simulate->add_option("flow", flow_id, "flow id")->required();
  simulate->add_option("source", src, "entity holding the token")->required();

  CLI::App* edit = app.add_subcommand("edit", "add or remove one channel and reprint");
  edit->add_option("net", netfile, "network file")->required();
  edit->add_flag("--add", do_add, "add the channel");
  edit->add_flag("--remove", do_remove, "remove the channel");
  edit->add_option("src", src, "channel source")->required();
  edit->add_option("dst", dst, "channel destination")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*labels) return cmd_labels(netfile, flow_id);
    if (*decide) return cmd_decide(netfile, {flow_id, src, dst, op_tag}, audit_path);
    if (*check) return cmd_check(netfile, policyfile);
    if (*lattice) return cmd_lattice(netfile, flow_id, complete, expect_lattice);
    if (*merge) return cmd_merge(netfile, merge_b, allow_shared, merged_id);
    if (*extract) return cmd_extract(netfile, keep);
    if (*dot) return cmd_dot(netfile);
    if (*simulate) return cmd_simulate(netfile, flow_id, src);
    if (*edit) {
      if (do_add == do_remove) {
        std::cerr << "error: specify exactly one of --add or --remove\n";
        return 2;
      }
      return cmd_edit(netfile, do_add, src, dst);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
