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

#ifndef POFLOW_LATTICE_HPP_
#define POFLOW_LATTICE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "poflow/core.hpp"
#include "poflow/order.hpp"

namespace poflow {

// Least upper bounds of {a, b}: the minimal elements of the set of common
// upper bounds. A join exists iff the result is a single class. Throws
// UnknownClass for out-of-range ids.
std::vector<int> joins_of(const Poset& p, int a, int b);

// Dual: maximal elements of the set of common lower bounds.
std::vector<int> meets_of(const Poset& p, int a, int b);

struct BoundFailure {
  int a = 0;
  int b = 0;
  // The minimal upper (resp. maximal lower) bounds found: empty, or two or
  // more incomparable candidates.
  std::vector<int> candidates;

  bool operator==(const BoundFailure&) const = default;
};

struct LatticeReport {
  bool is_lattice = true;
  std::vector<BoundFailure> join_failures;
  std::vector<BoundFailure> meet_failures;
};

// Checks every unordered pair of classes for a unique join and meet.
// Failures are listed deterministically: pairs ordered by the name of the
// smallest member entity of each class.
LatticeReport lattice_check(const Poset& p);

struct CompletionReport {
  std::size_t original_size = 0;
  std::size_t completed_size = 0;
  std::size_t void_labels = 0;  // completed_size - original_size
  Poset lattice;
  // embedding[i] = id of the lattice class the original class i maps to.
  std::vector<int> embedding;
  // Lattice classes with no original counterpart, ascending.
  std::vector<int> void_cut_ids;
};

// Dedekind-MacNeille completion: the smallest complete lattice the given
// order embeds into. Elements of the result are the "cuts" of the input;
// cuts that match no original element are void labels, points that exist
// only so that every pair gets a join and a meet. Inputs above 24 classes
// are rejected (PosetTooLarge): the completion can be exponential and this
// tool is meant for design-time study of small orders.
CompletionReport dedekind_macneille(const Poset& p);

// Union of two networks as one flow. Entity sets must be disjoint unless
// shared_names_allowed, in which case same-named entities are identified.
// The merged flow id defaults to "<id1>+<id2>" (or the common id when both
// inputs agree).
Network merge_networks(const Network& a, const Network& b, bool shared_names_allowed,
                       std::string merged_flow_id = "");

// Restriction of a network to a subset of its entities; keeps exactly the
// channels with both endpoints kept. Throws UnknownEntity.
Network induced_subnetwork(const Network& net, const std::vector<EntityId>& keep);

}  // namespace poflow

#endif  // POFLOW_LATTICE_HPP_
