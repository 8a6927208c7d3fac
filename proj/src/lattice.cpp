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

#include "poflow/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "poflow/errors.hpp"

namespace poflow {

namespace {

// Minimal elements of a candidate set under p's order.
std::vector<int> minimal_of(const Poset& p, const std::vector<int>& candidates) {
  std::vector<int> out;
  for (int c : candidates) {
    bool minimal = true;
    for (int d : candidates) {
      if (d != c && p.leq(d, c)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(c);
  }
  return out;
}

std::vector<int> maximal_of(const Poset& p, const std::vector<int>& candidates) {
  std::vector<int> out;
  for (int c : candidates) {
    bool maximal = true;
    for (int d : candidates) {
      if (d != c && p.leq(c, d)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(c);
  }
  return out;
}

// Sort key for reporting: the smallest member name, so output reads in
// entity terms rather than internal ids. Classes without members (possible
// in completed lattices) sort first.
const std::string& class_key(const Poset& p, int c) {
  static const std::string empty;
  const auto& members = p.cls(static_cast<std::size_t>(c)).members;
  return members.empty() ? empty : members.front();
}

}  // namespace

std::vector<int> joins_of(const Poset& p, int a, int b) {
  p.cls(static_cast<std::size_t>(a));
  p.cls(static_cast<std::size_t>(b));
  std::vector<int> upper;
  for (int c = 0; c < static_cast<int>(p.size()); ++c) {
    if (p.leq(a, c) && p.leq(b, c)) upper.push_back(c);
  }
  return minimal_of(p, upper);
}

std::vector<int> meets_of(const Poset& p, int a, int b) {
  p.cls(static_cast<std::size_t>(a));
  p.cls(static_cast<std::size_t>(b));
  std::vector<int> lower;
  for (int c = 0; c < static_cast<int>(p.size()); ++c) {
    if (p.leq(c, a) && p.leq(c, b)) lower.push_back(c);
  }
  return maximal_of(p, lower);
}

LatticeReport lattice_check(const Poset& p) {
  LatticeReport report;
  const int n = static_cast<int>(p.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int x = a;
      int y = b;
      if (std::tie(class_key(p, y), y) < std::tie(class_key(p, x), x)) std::swap(x, y);
      std::vector<int> joins = joins_of(p, a, b);
      if (joins.size() != 1) {
        report.join_failures.push_back({x, y, std::move(joins)});
      }
      std::vector<int> meets = meets_of(p, a, b);
      if (meets.size() != 1) {
        report.meet_failures.push_back({x, y, std::move(meets)});
      }
    }
  }
  auto by_key = [&p](const BoundFailure& l, const BoundFailure& r) {
    return std::tie(class_key(p, l.a), class_key(p, l.b), l.a, l.b) <
           std::tie(class_key(p, r.a), class_key(p, r.b), r.a, r.b);
  };
  std::sort(report.join_failures.begin(), report.join_failures.end(), by_key);
  std::sort(report.meet_failures.begin(), report.meet_failures.end(), by_key);
  report.is_lattice = report.join_failures.empty() && report.meet_failures.empty();
  return report;
}

CompletionReport dedekind_macneille(const Poset& p) {
  const std::size_t n = p.size();
  if (n > 24) {
    throw Error(Errc::PosetTooLarge,
                "completion supports at most 24 classes, got " + std::to_string(n));
  }

  // Principal down-sets as bitmasks.
  std::vector<std::uint64_t> down(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (p.leq(static_cast<int>(y), static_cast<int>(x))) down[x] |= std::uint64_t{1} << y;
    }
  }

  // The cuts are exactly the intersections of principal down-sets (the
  // empty intersection giving the full set). Close under intersection.
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::set<std::uint64_t> cuts{full};
  std::deque<std::uint64_t> work{full};
  while (!work.empty()) {
    std::uint64_t cur = work.front();
    work.pop_front();
    for (std::size_t x = 0; x < n; ++x) {
      std::uint64_t next = cur & down[x];
      if (cuts.insert(next).second) work.push_back(next);
    }
  }

  // Order cuts by (size, mask): a linear extension of inclusion, and
  // deterministic.
  std::vector<std::uint64_t> ordered(cuts.begin(), cuts.end());
  std::sort(ordered.begin(), ordered.end(), [](std::uint64_t l, std::uint64_t r) {
    return std::make_pair(std::popcount(l), l) < std::make_pair(std::popcount(r), r);
  });

  const std::size_t m = ordered.size();
  std::vector<EquivClass> classes(m);
  for (std::size_t i = 0; i < m; ++i) {
    classes[i].id = static_cast<int>(i);
    std::vector<EntityId> members;
    for (std::size_t x = 0; x < n; ++x) {
      if (ordered[i] & (std::uint64_t{1} << x)) {
        const auto& src = p.cls(x).members;
        members.insert(members.end(), src.begin(), src.end());
      }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    classes[i].members = std::move(members);
  }

  std::vector<std::uint8_t> leq(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      leq[i * m + j] = (ordered[i] & ~ordered[j]) == 0 ? 1 : 0;
    }
  }

  CompletionReport report;
  report.original_size = n;
  report.completed_size = m;
  // Inclusion order on a family closed under intersection is a partial
  // order by construction; skip the generic validation.
  report.lattice = Poset::from_leq(std::move(classes), std::move(leq), /*validate=*/false);

  report.embedding.assign(n, -1);
  std::vector<bool> hit(m, false);
  for (std::size_t x = 0; x < n; ++x) {
    auto it = std::lower_bound(ordered.begin(), ordered.end(), down[x],
                               [](std::uint64_t l, std::uint64_t r) {
                                 return std::make_pair(std::popcount(l), l) <
                                        std::make_pair(std::popcount(r), r);
                               });
    report.embedding[x] = static_cast<int>(it - ordered.begin());
    hit[static_cast<std::size_t>(report.embedding[x])] = true;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!hit[i]) report.void_cut_ids.push_back(static_cast<int>(i));
  }
  report.void_labels = report.void_cut_ids.size();
  return report;
}

Network merge_networks(const Network& a, const Network& b, bool shared_names_allowed,
                       std::string merged_flow_id) {
  if (!shared_names_allowed) {
    for (const EntityId& e : a.entities) {
      if (b.has_entity(e)) {
        throw Error(Errc::NameCollision,
                    "entity '" + e + "' exists in both '" + a.flow_id + "' and '" + b.flow_id + "'");
      }
    }
  }
  std::string flow_id = std::move(merged_flow_id);
  if (flow_id.empty()) {
    flow_id = a.flow_id == b.flow_id ? a.flow_id : a.flow_id + "_" + b.flow_id;
  }
  std::vector<EntityId> entities = a.entities;
  entities.insert(entities.end(), b.entities.begin(), b.entities.end());
  std::sort(entities.begin(), entities.end());
  entities.erase(std::unique(entities.begin(), entities.end()), entities.end());

  std::vector<std::pair<EntityId, EntityId>> channels;
  channels.reserve(a.channels.size() + b.channels.size());
  for (const Channel& c : a.channels) channels.emplace_back(c.src, c.dst);
  for (const Channel& c : b.channels) channels.emplace_back(c.src, c.dst);
  return build_network(std::move(flow_id), std::move(entities), std::move(channels));
}

Network induced_subnetwork(const Network& net, const std::vector<EntityId>& keep) {
  std::set<EntityId> kept;
  for (const EntityId& e : keep) {
    if (!net.has_entity(e)) {
      throw Error(Errc::UnknownEntity,
                  "entity '" + e + "' is not part of flow '" + net.flow_id + "'");
    }
    kept.insert(e);
  }
  std::vector<std::pair<EntityId, EntityId>> channels;
  for (const Channel& c : net.channels) {
    if (kept.count(c.src) && kept.count(c.dst)) channels.emplace_back(c.src, c.dst);
  }
  return build_network(net.flow_id, std::vector<EntityId>(kept.begin(), kept.end()),
                       std::move(channels));
}

}  // namespace poflow
