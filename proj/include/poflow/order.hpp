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

#ifndef POFLOW_ORDER_HPP_
#define POFLOW_ORDER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "poflow/core.hpp"

namespace poflow {

// "{a,b,c}", the canonical rendering of a sorted name set.
std::string format_name_set(const std::vector<EntityId>& names);

// A maximal set of entities that can all obtain the same data: x and y are
// in one class iff data can flow x -> y and y -> x. After condense(), id is
// the class's index and members is sorted. Completion posets reuse this
// struct with members holding provenance sets, which may be empty for a
// synthesized bottom element.
struct EquivClass {
  int id = 0;
  std::vector<EntityId> members;

  bool operator==(const EquivClass&) const = default;
};

// A finite partial order over equivalence classes, stored as a dense
// reflexive leq matrix. Posets built by condense() and dedekind_macneille()
// number classes along a linear extension: leq(a, b) with a != b implies
// a < b as indices. from_leq accepts any labeling.
class Poset {
 public:
  Poset() = default;

  // `leq` is row-major, size*size. With validate set, rejects matrices that
  // are not reflexive, antisymmetric and transitive.
  static Poset from_leq(std::vector<EquivClass> classes, std::vector<std::uint8_t> leq,
                        bool validate = true);

  std::size_t size() const { return classes_.size(); }
  const std::vector<EquivClass>& classes() const { return classes_; }

  // Throws UnknownClass when the index is out of range.
  const EquivClass& cls(std::size_t i) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b] != 0; }
  bool strictly_below(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

  bool is_partial_order(std::string* why = nullptr) const;

  bool operator==(const Poset&) const = default;

 private:
  std::vector<EquivClass> classes_;
  std::vector<std::uint8_t> leq_;
};

// Condensation of one flow: the partial order of equivalence classes plus
// the entity-to-class assignment.
struct Condensation {
  Poset order;
  std::map<EntityId, int> class_of;
};

// The provenance of an entity: every entity whose data can reach it,
// including itself. Stored canonically sorted; inclusion is plain subset.
struct Label {
  std::vector<EntityId> names;  // sorted, unique

  bool subset_of(const Label& other) const;
  bool contains(const EntityId& name) const;
  void merge(const Label& other);
  std::string to_string() const { return format_name_set(names); }

  bool operator==(const Label&) const = default;
};

// The label assignment of one flow; total over the flow's entities.
// Entities in the same equivalence class carry equal labels, and
// Label(x) subset-of Label(y) holds exactly when data can flow x -> y.
struct LabelTable {
  std::string flow_id;
  std::map<EntityId, Label> labels;

  const Label* find(const EntityId& name) const;

  bool operator==(const LabelTable&) const = default;
};

// True iff data can move from `from` to `to` through a chain of channels;
// reflexive by definition. Throws UnknownEntity.
bool can_flow(const Network& net, const EntityId& from, const EntityId& to);

// Strongly connected components of the channel graph, ordered bottom-up:
// a class only appears after every class strictly below it, ties broken by
// the lexicographically smallest member name.
Condensation condense(const Network& net);

// Bottom-up label construction over the condensation: a class's label is
// its member set united with the labels of all strictly lower classes.
LabelTable compute_labels(const Network& net);

// Brute-force token propagation: inject a token at `source` and copy it
// across channels until nothing changes. Deliberately naive, this is the
// reference every closure-based result is checked against. Returns the
// sorted set of entities holding the token. Throws UnknownEntity.
std::vector<EntityId> simulate_propagation(const Network& net, const EntityId& source);

}  // namespace poflow

#endif  // POFLOW_ORDER_HPP_
