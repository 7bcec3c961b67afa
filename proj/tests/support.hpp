#pragma once

#include <set>
#include <vector>

#include "rig/graph.hpp"
#include "rig/rng.hpp"
#include "rig/size_dist.hpp"

namespace test {

// Random finite law with 1..5 atoms in [0, max_value].
inline rig::SizeDistribution random_law(rig::Rng& rng, std::uint64_t max_value,
                                        std::uint64_t min_value = 0) {
  const auto atoms = 1 + rng.below(5);
  std::set<std::uint64_t> values;
  while (values.size() < atoms && values.size() < max_value - min_value + 1) {
    values.insert(min_value + rng.below(max_value - min_value + 1));
  }
  std::vector<rig::Atom> out;
  double total = 0.0;
  for (auto v : values) {
    out.push_back({v, 0.05 + rng.uniform()});
    total += out.back().prob;
  }
  for (auto& a : out) a.prob /= total;
  return rig::SizeDistribution::table(out);
}

inline rig::Graph triangle() { return rig::Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline rig::Graph path3() { return rig::Graph::from_edges(3, {{0, 1}, {1, 2}}); }
inline rig::Graph path4() { return rig::Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}); }
inline rig::Graph star3() { return rig::Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}); }
// K4 without the edge {2, 3}: vertices 0 and 1 are the hubs.
inline rig::Graph k4_minus_edge() {
  return rig::Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

}  // namespace test
