#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "rig/graph.hpp"

namespace rig {

/// Thrown by statistics that average over edges when the graph has none.
class NoEdgesError : public std::domain_error {
 public:
  NoEdgesError() : std::domain_error("graph has no edges") {}
};

/// Averages over ordered adjacent pairs (v1, v2):
///   b = E d(v1), b' = E d(v1)^2, g = E d(v1) d(v2), h = E d(v1, v2)
/// where d(v1, v2) counts common neighbours.
struct EdgeMoments {
  double b = 0.0;
  double b_prime = 0.0;
  double g = 0.0;
  double h = 0.0;
};

/// Averages over ordered adjacent pairs (u, v) whose second vertex has degree
/// k. Undefined when there is no such pair.
struct ConditionalMoments {
  std::uint32_t k = 0;
  std::uint64_t pair_count = 0;
  std::optional<double> b_k;
  std::optional<double> h_k;
};

struct PerDegreeRow {
  std::uint32_t k = 0;
  std::uint64_t vertex_count = 0;
  std::uint64_t pair_count = 0;
  std::optional<double> b_k;
  std::optional<double> h_k;
  std::optional<double> alpha_k;
};

/// Every statistic of one graph. Undefined values are std::nullopt.
struct EmpiricalStats {
  std::uint32_t vertex_count = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;
  double edge_density = 0.0;
  double mean_degree = 0.0;
  std::optional<double> b;
  std::optional<double> b_prime;
  std::optional<double> g;
  std::optional<double> h;
  std::optional<double> r;
  std::optional<double> alpha;
  std::map<std::uint32_t, std::uint64_t> degree_histogram;
  /// One row per realized degree k >= 1, ascending.
  std::vector<PerDegreeRow> per_k;

  const PerDegreeRow* row(std::uint32_t k) const;
};

/// Throws NoEdgesError on an edgeless graph.
EdgeMoments edge_moments(const Graph& g);

/// (g - b^2) / (b' - b^2); nullopt when b' - b^2 < 1e-12. Throws NoEdgesError.
std::optional<double> assortativity(const Graph& g);

ConditionalMoments conditional_moments(const Graph& g, std::uint32_t k);

/// 3 * triangles / wedges; nullopt without wedges.
std::optional<double> clustering_global(const Graph& g);

/// Fraction of neighbour pairs of degree-k vertices that are adjacent;
/// nullopt when no vertex has degree k or k < 2.
std::optional<double> clustering_k(const Graph& g, std::uint32_t k);

std::map<std::uint32_t, std::uint64_t> degree_histogram(const Graph& g);

/// All of the above in one pass over the edges.
EmpiricalStats compute_stats(const Graph& g);

nlohmann::json to_json(const EmpiricalStats& stats);

/// One row per realized degree with columns
/// k,degree_pmf,pair_count,b_k,h_k,alpha_k. Undefined values are empty cells.
std::string per_k_csv(const EmpiricalStats& stats);

}  // namespace rig
