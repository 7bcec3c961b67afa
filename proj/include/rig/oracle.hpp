#pragma once

// Independent reference computations. Nothing here calls into the generator,
// statistics or theory code paths; each routine recomputes its answer the slow
// and obvious way so it can be used to check them.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rig/graph.hpp"
#include "rig/size_dist.hpp"

namespace rig::oracle {

struct BruteRow {
  std::uint64_t pair_count = 0;
  std::optional<double> b_k;
  std::optional<double> h_k;
  std::optional<double> alpha_k;
};

struct BruteStats {
  std::optional<double> b, b_prime, g, h, r, alpha;
  std::map<std::uint32_t, std::uint64_t> histogram;
  std::map<std::uint32_t, BruteRow> per_k;  // realized degrees k >= 1
};

/// O(N^3) statistics from a dense adjacency matrix. r is the Pearson
/// correlation computed from the explicit list of ordered adjacent pairs.
BruteStats brute_force_stats(const Graph& g);

/// Exhaustive count over all pairs of k1- and k2-subsets of an m-set
/// (m <= 20): P(|D1 ∩ D2| >= s) as count / total.
double enumerate_edge_probability(std::uint32_t m, std::uint32_t s, std::uint32_t k1,
                                  std::uint32_t k2);

/// Exact degree law of vertex 0 in the passive graph built from n sets of
/// fixed sizes on m vertices, by enumerating every equally likely choice.
std::vector<double> enumerate_passive_degree(std::uint32_t m,
                                             const std::vector<std::uint32_t>& sizes);

/// Compound-Poisson pmf by explicit L-fold convolution of the size-biased law
/// for L <= lmax, each weighted by its Poisson probability.
std::vector<double> compound_pmf_convolution(const SizeDistribution& z_dist, double beta,
                                             std::size_t kmax, std::size_t lmax);

/// Monte Carlo estimate of E(d2 | d = k) from `draws` compound-Poisson draws.
struct ConditionalEstimate {
  std::uint64_t hits = 0;
  double mean = 0.0;
  double standard_error = 0.0;
};
std::vector<ConditionalEstimate> monte_carlo_d2star(const SizeDistribution& z_dist, double beta,
                                                    std::size_t kmax, std::uint64_t draws,
                                                    std::uint64_t seed);

/// Random simple graph on n vertices with edge probability p.
Graph random_graph(std::uint32_t n, double p, std::uint64_t seed);

}  // namespace rig::oracle
