#pragma once

#include <cstdint>
#include <vector>

#include "rig/graph.hpp"
#include "rig/rng.hpp"
#include "rig/size_dist.hpp"

namespace rig {

/// Parameters of the active random intersection graph: n vertices, each
/// holding a random subset of an m-element attribute set, adjacent when the
/// subsets share at least s attributes.
struct ActiveModelSpec {
  std::uint32_t n = 1;
  std::uint32_t m = 1;
  std::uint32_t s = 1;
  SizeDistribution size_dist;
  std::uint64_t seed = 0;
  /// Per-vertex cap on C(|D_i|, s) for the joint index.
  std::uint64_t joint_budget = 1'000'000;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// C(m, s) / n.
  double beta() const;
};

/// Uniform k-subset of {0, ..., m-1}, sorted ascending. Partial Fisher-Yates
/// over a virtual identity array, so the cost is O(k) rather than O(m).
std::vector<std::uint32_t> sample_subset(std::uint32_t m, std::uint32_t k, Rng& rng);

/// Attribute sets D_0..D_{n-1}. Vertex i draws from stream i of spec.seed.
std::vector<std::vector<std::uint32_t>> sample_attribute_sets(const ActiveModelSpec& spec);

/// Active intersection graph on the given attribute sets: vertices sharing
/// an s-subset ("joint") are found through a joint -> vertices index.
Graph active_graph_from_sets(std::uint32_t m, std::uint32_t s,
                             const std::vector<std::vector<std::uint32_t>>& sets,
                             std::uint64_t joint_budget = 1'000'000);

Graph generate_active(const ActiveModelSpec& spec);

/// P(|D1 ∩ D2| >= s) for independent uniform k1- and k2-subsets of an m-set.
double edge_probability_exact(std::uint32_t m, std::uint32_t s, std::uint32_t k1, std::uint32_t k2);

/// P(|D1 ∩ D2| = s) for the same pair.
double overlap_probability_exact(std::uint32_t m, std::uint32_t s, std::uint32_t k1,
                                 std::uint32_t k2);

/// Two-sided bounds on the overlap probabilities for 1 <= s <= k1 <= k2 <= m:
///   lower <= P(|D1 ∩ D2| = s) <= P(|D1 ∩ D2| >= s) <= upper,
/// upper = C(k1,s) C(k2,s) / C(m,s) and
/// lower = max(0, 1 - (k1-s)(k2-s)/(m+1-k1)) * upper.
struct OverlapBounds {
  double lower = 0.0;
  double upper = 0.0;
};
OverlapBounds overlap_probability_bounds(std::uint32_t m, std::uint32_t s, std::uint32_t k1,
                                         std::uint32_t k2);

}  // namespace rig
