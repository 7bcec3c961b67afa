#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rig/passive_graph.hpp"
#include "rig/size_dist.hpp"
#include "rig/theory_common.hpp"

namespace rig {

/// P(Z~ = j) = (j+1) P(Z = j+1) / E Z; point mass at 0 when E Z = 0.
SizeDistribution size_biased_pmf(const SizeDistribution& z_dist);

/// Limiting degree of the passive graph: d = Z~_1 + ... + Z~_L with
/// L ~ Poisson(E Z / beta) independent of the i.i.d. size-biased summands.
struct CompoundPoissonModel {
  SizeDistribution z_dist;
  double beta = 1.0;
  SizeDistribution tilde_z;
  double lambda = 0.0;

  static CompoundPoissonModel make(const SizeDistribution& z_dist, double beta);
};

/// P(d = k) for k <= kmax by the Panjer recursion
///   P(0) = exp(-lambda (1 - q_0)),  P(k) = (lambda / k) sum_j j q_j P(k - j).
std::vector<double> compound_pmf(const CompoundPoissonModel& model, std::size_t kmax);

/// Smallest k with compound tail mass below 1e-9, capped at 200.
std::size_t default_kmax_passive(const CompoundPoissonModel& model);

/// Joint table of P(d = k) and E(d2 | d = k), d2 = sum_i (Z~_i)_2, for
/// k <= kmax. Built by iterating the Poisson-weighted L-fold convolution of
/// the pair (Z~, (Z~)_2), truncating L where the Poisson tail drops below
/// 1e-12. Conditional entries with P(d = k) <= threshold are nullopt.
struct D2StarTable {
  std::vector<double> pmf;
  std::vector<std::optional<double>> conditional;
};
D2StarTable conditional_d2star_table(const CompoundPoissonModel& model, std::size_t kmax,
                                     double threshold = 1e-12);

std::optional<double> conditional_d2star(const CompoundPoissonModel& model, std::size_t k,
                                         double threshold = 1e-12);

/// Factorial and raw moments of d (orders 1..3), from
///   E(d)_1 = u_2/beta, E(d)_2 = u_2^2/beta^2 + u_3/beta,
///   E(d)_3 = u_2^3/beta^3 + 3 u_2 u_3/beta^2 + u_4/beta
/// with u_i = E(Z)_i.
struct DegreeStarMoments {
  std::vector<double> factorial;
  std::vector<double> raw;
};
DegreeStarMoments delta_star_moments(const CompoundPoissonModel& model);

/// Factorial moments y_2..y_4 used by the y-forms.
struct FactorialMoments {
  double y2 = 0.0, y3 = 0.0, y4 = 0.0;
  static FactorialMoments of(const SizeDistribution& d);
};

/// y_* = y2 y4 + y2 y3 - y3^2, non-negative for every law.
double y_star(const FactorialMoments& y);

/// value: y_* / (y_* + y2^2 (y2 + y3) / beta_n) using the limit moments of
/// z_dist; alternate: 1 - (d2 d1^2 - d1^4) / (d1 d3 - d2^2) in raw degree
/// moments. Undefined when P(Z >= 2) = 0.
DualForm assortativity_passive(const SizeDistribution& z_dist, double beta_n);

/// y-form only, for explicit (e.g. finite-n) factorial moments.
std::optional<double> assortativity_passive_y(const FactorialMoments& y, double beta_n);

/// (y2^3 / (beta_n^2 m) + y3) / (y2^2 / beta_n + y3); m = nullopt drops the
/// 1/m term. Undefined when y2 = 0.
std::optional<double> clustering_passive(const SizeDistribution& z_dist, double beta_n,
                                         std::optional<double> m = std::nullopt);

struct PassiveNeighbourRow {
  std::uint32_t k = 0;
  double p_k = 0.0;
  std::optional<double> h;
  std::optional<double> b;
};

/// b = 1 + y2/beta + y3/y2 (alternate d2/d1), h = y3/y2 (alternate
/// d2/d1 - 1 - d1); h_k = E(d2 | d = k) / k and b_k = 1 + y2/beta + h_k.
struct PassiveNeighbourStats {
  DualForm b;
  DualForm h;
  std::vector<PassiveNeighbourRow> rows;
};
PassiveNeighbourStats neighbour_stats_passive(const CompoundPoissonModel& model, std::size_t kmax,
                                              double threshold = 1e-12);

struct PassivePrediction {
  CompoundPoissonModel model;
  std::optional<double> m;
  FactorialMoments y_limit;
  std::optional<FactorialMoments> y_finite;
  DegreeStarMoments delta;
  DualForm r;
  std::optional<double> r_finite;
  std::optional<double> alpha;
  PassiveNeighbourStats neighbours;
  std::vector<double> degree_pmf;
  double tail_mass = 0.0;
};

/// `finite_sizes`, when given, is the finite-n law of set sizes; its exact
/// factorial moments feed a second y-form value reported as r_finite.
PassivePrediction predict_passive(const SizeDistribution& z_dist, double beta_n,
                                  std::optional<double> m = std::nullopt,
                                  std::optional<std::size_t> kmax = std::nullopt,
                                  const SizeDistribution* finite_sizes = nullptr);

/// For a finite model the set-size law is its own limit and beta_n = m / n.
PassivePrediction predict_passive(const PassiveModelSpec& spec,
                                  std::optional<std::size_t> kmax = std::nullopt);

nlohmann::json to_json(const PassivePrediction& p);

}  // namespace rig
