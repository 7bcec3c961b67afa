#pragma once

#include <cstdint>
#include <vector>

#include "rig/graph.hpp"
#include "rig/size_dist.hpp"

namespace rig {

/// Passive random intersection graph: the m attributes are the vertices and
/// each of the n random sets D_k makes its members a clique.
struct PassiveModelSpec {
  std::uint32_t n = 1;
  std::uint32_t m = 1;
  SizeDistribution size_dist;
  std::uint64_t seed = 0;

  void validate() const;

  /// m / n.
  double beta() const { return static_cast<double>(m) / n; }
};

/// The random sets D_0..D_{n-1}; set k draws from stream k of spec.seed.
std::vector<std::vector<std::uint32_t>> sample_passive_sets(const PassiveModelSpec& spec);

/// Union of the cliques induced by `sets` on m vertices.
Graph passive_graph_from_sets(std::uint32_t m, const std::vector<std::vector<std::uint32_t>>& sets);

Graph generate_passive(const PassiveModelSpec& spec);

}  // namespace rig
