#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "rig/active_graph.hpp"
#include "rig/size_dist.hpp"
#include "rig/theory_common.hpp"

namespace rig {

/// Limit parameters of a sparse active intersection graph sequence.
///
/// The rescaled joint count converges to Z = z_scale * V with V drawn from
/// `z_dist`; `beta` is the limit of C(m, s) / n. The scale factor lets an
/// integer-valued law describe the real-valued Z.
struct ActiveLimitSpec {
  SizeDistribution z_dist;
  double z_scale = 1.0;
  double beta = 1.0;

  /// Z = beta^{-1/2} C(X, s) for set sizes X: the limit seen by a graph
  /// whose C(m, s) / n equals beta.
  static ActiveLimitSpec from_sizes(const SizeDistribution& sizes, std::uint32_t s, double beta);

  /// Same, with beta = C(m, s) / n taken from a finite model.
  static ActiveLimitSpec from_model(const ActiveModelSpec& model);

  void validate() const;

  /// z_i = E Z^i.
  double z(int i) const;
  /// a_i = beta^{i/2} z_i, the joint-count moments E C(X, s)^i.
  double a(int i) const;
};

/// p_0..p_kmax of the Poisson mixture with intensity z_1 Z.
std::vector<double> degree_pmf_active(const ActiveLimitSpec& spec, std::size_t kmax);

/// Smallest k with mixture tail mass below 1e-9, capped at 200.
std::size_t default_kmax_active(const ActiveLimitSpec& spec);

/// Moments of the limiting degree d: raw[i-1] = E d^i, factorial[i-1] = E (d)_i.
struct DegreeMoments {
  std::vector<double> raw;
  std::vector<double> factorial;
};

/// Factorial moments are z_i z_1^i exactly; raw moments follow by Stirling
/// conversion.
DegreeMoments delta_moments_active(const ActiveLimitSpec& spec, int up_to = 3);

/// Clustering: value = a_1 / a_2, alternate = beta^{-1/2} d_1^{3/2} / (d_2 - d_1)
/// in terms of raw degree moments. Undefined when d_2 == d_1.
DualForm clustering_active(const ActiveLimitSpec& spec);

/// Assortativity: value = a_1 / (beta^{-1}(a_1 a_3 - a_2^2) + a_2), alternate
/// is the factorial-degree-moment form. Undefined when Z == 0.
DualForm assortativity_active(const ActiveLimitSpec& spec);

/// Row for conditioned degree k + 1 (the neighbour's degree).
struct ActiveNeighbourRow {
  std::uint32_t degree = 0;  // conditioned degree, k + 1
  std::optional<double> h;
  std::optional<double> b;
  std::optional<double> increment;  // b_{k+1} - b
};

struct ActiveNeighbourStats {
  std::optional<double> b;
  std::optional<double> h;
  std::vector<ActiveNeighbourRow> rows;
};

/// b = 1 + a_2/beta, h = a_1/beta and for each conditioned degree k+1 <= kmax
///   h_{k+1} = (a_1/beta) (k/(k+1)) p_k / p_{k+1},
///   b_{k+1} = 1 + (a_2 - a_1)/beta + h_{k+1}.
/// Rows with p_{k+1} <= threshold are left unavailable.
ActiveNeighbourStats neighbour_stats_active(const ActiveLimitSpec& spec, std::size_t kmax,
                                            double threshold = 1e-12);

/// b_{k+1} - b ~ (gamma - 1) (delta1 / beta)^{1/2} / k for a power-law degree
/// tail with exponent gamma > 3.
double increment_powerlaw(double gamma, double delta1, double beta, double k);

struct ActivePrediction {
  ActiveLimitSpec spec;
  std::vector<double> degree_pmf;
  double tail_mass = 0.0;
  DegreeMoments delta;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  DualForm alpha;
  DualForm r;
  ActiveNeighbourStats neighbours;
};

/// Everything above; kmax defaults to default_kmax_active.
ActivePrediction predict_active(const ActiveLimitSpec& spec,
                                std::optional<std::size_t> kmax = std::nullopt);

nlohmann::json to_json(const ActivePrediction& p);

}  // namespace rig
