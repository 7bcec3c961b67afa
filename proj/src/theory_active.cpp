#include "rig/theory_active.hpp"

#include <cmath>
#include <stdexcept>

namespace rig {

ActiveLimitSpec ActiveLimitSpec::from_sizes(const SizeDistribution& sizes, std::uint32_t s,
                                            double beta) {
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  ActiveLimitSpec spec;
  spec.z_dist = sizes.map([s](std::uint64_t x) {
    return static_cast<std::uint64_t>(binomial_coefficient(x, s));
  });
  spec.beta = beta;
  spec.z_scale = 1.0 / std::sqrt(beta);
  spec.validate();
  return spec;
}

ActiveLimitSpec ActiveLimitSpec::from_model(const ActiveModelSpec& model) {
  model.validate();
  return from_sizes(model.size_dist, model.s, model.beta());
}

void ActiveLimitSpec::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be > 0");
  if (!(z_scale > 0.0) || !std::isfinite(z_scale)) {
    throw std::invalid_argument("z_scale must be > 0");
  }
}

double ActiveLimitSpec::z(int i) const { return std::pow(z_scale, i) * z_dist.raw_moment(i); }

double ActiveLimitSpec::a(int i) const { return std::pow(beta, 0.5 * i) * z(i); }

std::vector<double> degree_pmf_active(const ActiveLimitSpec& spec, std::size_t kmax) {
  std::vector<double> pmf(kmax + 1, 0.0);
  const double z1 = spec.z(1);
  for (const auto& atom : spec.z_dist.support()) {
    const double intensity = z1 * spec.z_scale * static_cast<double>(atom.value);
    for (std::size_t k = 0; k <= kmax; ++k) pmf[k] += atom.prob * poisson_pmf(intensity, k);
  }
  return pmf;
}

std::size_t default_kmax_active(const ActiveLimitSpec& spec) {
  const double z1 = spec.z(1);
  return adaptive_kmax([&](std::size_t k) {
    double p = 0.0;
    for (const auto& atom : spec.z_dist.support()) {
      p += atom.prob * poisson_pmf(z1 * spec.z_scale * static_cast<double>(atom.value), k);
    }
    return p;
  });
}

DegreeMoments delta_moments_active(const ActiveLimitSpec& spec, int up_to) {
  DegreeMoments d;
  const double z1 = spec.z(1);
  for (int i = 1; i <= up_to; ++i) d.factorial.push_back(spec.z(i) * std::pow(z1, i));
  d.raw = raw_from_factorial(d.factorial);
  return d;
}

DualForm clustering_active(const ActiveLimitSpec& spec) {
  DualForm f;
  const double a1 = spec.a(1);
  const double a2 = spec.a(2);
  const auto d = delta_moments_active(spec, 2);
  if (a2 > 0.0) f.value = a1 / a2;
  if (d.factorial[1] > 0.0) {
    f.alternate = std::pow(d.raw[0], 1.5) / ((d.raw[1] - d.raw[0]) * std::sqrt(spec.beta));
  }
  return f;
}

DualForm assortativity_active(const ActiveLimitSpec& spec) {
  DualForm f;
  const double a1 = spec.a(1);
  const double a2 = spec.a(2);
  const double a3 = spec.a(3);
  if (a1 > 0.0) f.value = a1 / ((a1 * a3 - a2 * a2) / spec.beta + a2);
  const auto d = delta_moments_active(spec, 3).factorial;
  if (d[0] > 0.0) {
    f.alternate = std::pow(d[0], 2.5) /
                  (std::sqrt(spec.beta) * (d[2] * d[0] - d[1] * d[1] + d[1] * d[0]));
  }
  return f;
}

ActiveNeighbourStats neighbour_stats_active(const ActiveLimitSpec& spec, std::size_t kmax,
                                            double threshold) {
  ActiveNeighbourStats out;
  const double a1 = spec.a(1);
  const double a2 = spec.a(2);
  if (!(a1 > 0.0)) return out;
  const double beta = spec.beta;
  out.b = 1.0 + a2 / beta;
  out.h = a1 / beta;
  const auto pmf = degree_pmf_active(spec, kmax);
  for (std::size_t degree = 1; degree <= kmax; ++degree) {
    ActiveNeighbourRow row;
    row.degree = static_cast<std::uint32_t>(degree);
    if (pmf[degree] > threshold) {
      const double k = static_cast<double>(degree - 1);
      const double h = (a1 / beta) * (k / (k + 1.0)) * (pmf[degree - 1] / pmf[degree]);
      row.h = h;
      row.b = 1.0 + (a2 - a1) / beta + h;
      row.increment = *row.b - *out.b;
    }
    out.rows.push_back(row);
  }
  return out;
}

double increment_powerlaw(double gamma, double delta1, double beta, double k) {
  return (gamma - 1.0) * std::sqrt(delta1 / beta) / k;
}

ActivePrediction predict_active(const ActiveLimitSpec& spec, std::optional<std::size_t> kmax) {
  spec.validate();
  ActivePrediction p;
  p.spec = spec;
  const std::size_t top = kmax.value_or(default_kmax_active(spec));
  p.degree_pmf = degree_pmf_active(spec, top);
  double mass = 0.0;
  for (double v : p.degree_pmf) mass += v;
  p.tail_mass = std::max(0.0, 1.0 - mass);
  p.delta = delta_moments_active(spec, 3);
  p.a1 = spec.a(1);
  p.a2 = spec.a(2);
  p.a3 = spec.a(3);
  p.alpha = clustering_active(spec);
  p.r = assortativity_active(spec);
  p.neighbours = neighbour_stats_active(spec, top);
  return p;
}

nlohmann::json to_json(const ActivePrediction& p) {
  nlohmann::json pmf = nlohmann::json::array();
  for (std::size_t k = 0; k < p.degree_pmf.size(); ++k) {
    pmf.push_back({{"k", k}, {"p", p.degree_pmf[k]}});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : p.neighbours.rows) {
    std::optional<double> alpha_k;
    if (row.h && row.degree >= 2) alpha_k = *row.h / (row.degree - 1);
    rows.push_back({{"k", row.degree},
                    {"b_k", optional_json(row.b)},
                    {"h_k", optional_json(row.h)},
                    {"alpha_k", optional_json(alpha_k)},
                    {"increment", optional_json(row.increment)}});
  }
  return {{"model", "active"},
          {"beta", p.spec.beta},
          {"z_scale", p.spec.z_scale},
          {"z_dist", p.spec.z_dist.to_json()},
          {"mean_degree", p.delta.raw[0]},
          {"b", optional_json(p.neighbours.b)},
          {"h", optional_json(p.neighbours.h)},
          {"r", optional_json(p.r.value)},
          {"alpha", optional_json(p.alpha.value)},
          {"r_forms", to_json(p.r)},
          {"alpha_forms", to_json(p.alpha)},
          {"moments",
           {{"a", {p.a1, p.a2, p.a3}},
            {"delta", p.delta.raw},
            {"delta_factorial", p.delta.factorial}}},
          {"tail_mass", p.tail_mass},
          {"degree_pmf", std::move(pmf)},
          {"per_k", std::move(rows)}};
}

}  // namespace rig
