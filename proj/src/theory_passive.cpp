#include "rig/theory_passive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rig {

SizeDistribution size_biased_pmf(const SizeDistribution& z_dist) {
  const double mean = z_dist.mean();
  if (!(mean > 0.0)) return SizeDistribution::degenerate(0);
  std::vector<Atom> atoms;
  for (const auto& a : z_dist.support()) {
    if (a.value == 0) continue;
    atoms.push_back({a.value - 1, static_cast<double>(a.value) * a.prob / mean});
  }
  return SizeDistribution::table(std::move(atoms));
}

CompoundPoissonModel CompoundPoissonModel::make(const SizeDistribution& z_dist, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be > 0");
  CompoundPoissonModel model;
  model.z_dist = z_dist;
  model.beta = beta;
  model.tilde_z = size_biased_pmf(z_dist);
  model.lambda = z_dist.mean() / beta;
  return model;
}

std::vector<double> compound_pmf(const CompoundPoissonModel& model, std::size_t kmax) {
  std::vector<double> pmf(kmax + 1, 0.0);
  const auto& q = model.tilde_z;
  pmf[0] = std::exp(-model.lambda * (1.0 - q.pmf(0)));
  for (std::size_t k = 1; k <= kmax; ++k) {
    double acc = 0.0;
    for (const auto& a : q.support()) {
      if (a.value == 0 || a.value > k) continue;
      acc += static_cast<double>(a.value) * a.prob * pmf[k - a.value];
    }
    pmf[k] = model.lambda * acc / static_cast<double>(k);
  }
  return pmf;
}

std::size_t default_kmax_passive(const CompoundPoissonModel& model) {
  const auto pmf = compound_pmf(model, 200);
  return adaptive_kmax([&](std::size_t k) { return pmf[k]; });
}

D2StarTable conditional_d2star_table(const CompoundPoissonModel& model, std::size_t kmax,
                                     double threshold) {
  const std::size_t width = kmax + 1;
  // fold_p[k] = P(S_L = k), fold_m[k] = E[T_L 1{S_L = k}] for the L-fold sums
  // S_L of Z~ and T_L of (Z~)_2.
  std::vector<double> fold_p(width, 0.0);
  std::vector<double> fold_m(width, 0.0);
  fold_p[0] = 1.0;
  std::vector<double> pmf(width, 0.0);
  std::vector<double> mass(width, 0.0);
  std::vector<double> next_p(width);
  std::vector<double> next_m(width);

  const std::size_t lmax = poisson_truncation(model.lambda);
  for (std::size_t L = 0;; ++L) {
    const double w = poisson_pmf(model.lambda, L);
    for (std::size_t k = 0; k < width; ++k) {
      pmf[k] += w * fold_p[k];
      mass[k] += w * fold_m[k];
    }
    if (L == lmax) break;
    std::fill(next_p.begin(), next_p.end(), 0.0);
    std::fill(next_m.begin(), next_m.end(), 0.0);
    for (const auto& a : model.tilde_z.support()) {
      if (a.value > kmax) break;
      const auto j = static_cast<std::size_t>(a.value);
      const double pairs = falling_factorial(a.value, 2);
      for (std::size_t k = j; k < width; ++k) {
        next_p[k] += a.prob * fold_p[k - j];
        next_m[k] += a.prob * (fold_m[k - j] + pairs * fold_p[k - j]);
      }
    }
    fold_p.swap(next_p);
    fold_m.swap(next_m);
  }

  D2StarTable table;
  table.pmf = pmf;
  table.conditional.resize(width);
  for (std::size_t k = 0; k < width; ++k) {
    if (pmf[k] > threshold) table.conditional[k] = mass[k] / pmf[k];
  }
  return table;
}

std::optional<double> conditional_d2star(const CompoundPoissonModel& model, std::size_t k,
                                         double threshold) {
  return conditional_d2star_table(model, k, threshold).conditional[k];
}

DegreeStarMoments delta_star_moments(const CompoundPoissonModel& model) {
  const double u2 = model.z_dist.factorial_moment(2);
  const double u3 = model.z_dist.factorial_moment(3);
  const double u4 = model.z_dist.factorial_moment(4);
  const double ib = 1.0 / model.beta;
  DegreeStarMoments d;
  d.factorial = {ib * u2, ib * ib * u2 * u2 + ib * u3,
                 ib * ib * ib * u2 * u2 * u2 + 3.0 * ib * ib * u2 * u3 + ib * u4};
  d.raw = raw_from_factorial(d.factorial);
  return d;
}

FactorialMoments FactorialMoments::of(const SizeDistribution& d) {
  return {d.factorial_moment(2), d.factorial_moment(3), d.factorial_moment(4)};
}

double y_star(const FactorialMoments& y) { return y.y2 * y.y4 + y.y2 * y.y3 - y.y3 * y.y3; }

std::optional<double> assortativity_passive_y(const FactorialMoments& y, double beta_n) {
  if (!(y.y2 > 0.0)) return std::nullopt;
  const double ys = y_star(y);
  return ys / (ys + y.y2 * y.y2 * (y.y2 + y.y3) / beta_n);
}

DualForm assortativity_passive(const SizeDistribution& z_dist, double beta_n) {
  DualForm f;
  if (!(z_dist.prob_at_least(2) > 0.0)) return f;
  f.value = assortativity_passive_y(FactorialMoments::of(z_dist), beta_n);
  const auto d = delta_star_moments(CompoundPoissonModel::make(z_dist, beta_n)).raw;
  const double denom = d[0] * d[2] - d[1] * d[1];
  if (denom != 0.0) {
    f.alternate = 1.0 - (d[1] * d[0] * d[0] - std::pow(d[0], 4)) / denom;
  }
  return f;
}

std::optional<double> clustering_passive(const SizeDistribution& z_dist, double beta_n,
                                         std::optional<double> m) {
  const auto y = FactorialMoments::of(z_dist);
  if (!(y.y2 > 0.0)) return std::nullopt;
  const double finite = m ? y.y2 * y.y2 * y.y2 / (beta_n * beta_n * *m) : 0.0;
  return (finite + y.y3) / (y.y2 * y.y2 / beta_n + y.y3);
}

PassiveNeighbourStats neighbour_stats_passive(const CompoundPoissonModel& model,
                                              std::size_t kmax, double threshold) {
  PassiveNeighbourStats out;
  const auto y = FactorialMoments::of(model.z_dist);
  const auto table = conditional_d2star_table(model, kmax, threshold);
  const bool defined = y.y2 > 0.0;
  if (defined) {
    const auto d = delta_star_moments(model).raw;
    out.b = {1.0 + y.y2 / model.beta + y.y3 / y.y2, d[1] / d[0]};
    out.h = {y.y3 / y.y2, d[1] / d[0] - 1.0 - d[0]};
  }
  for (std::size_t k = 1; k <= kmax; ++k) {
    PassiveNeighbourRow row;
    row.k = static_cast<std::uint32_t>(k);
    row.p_k = table.pmf[k];
    if (defined && table.conditional[k]) {
      row.h = *table.conditional[k] / static_cast<double>(k);
      row.b = 1.0 + y.y2 / model.beta + *row.h;
    }
    out.rows.push_back(row);
  }
  return out;
}

PassivePrediction predict_passive(const SizeDistribution& z_dist, double beta_n,
                                  std::optional<double> m, std::optional<std::size_t> kmax,
                                  const SizeDistribution* finite_sizes) {
  PassivePrediction p;
  p.model = CompoundPoissonModel::make(z_dist, beta_n);
  p.m = m;
  const std::size_t top = kmax.value_or(default_kmax_passive(p.model));
  p.y_limit = FactorialMoments::of(z_dist);
  p.delta = delta_star_moments(p.model);
  p.r = assortativity_passive(z_dist, beta_n);
  if (finite_sizes != nullptr) {
    p.y_finite = FactorialMoments::of(*finite_sizes);
    p.r_finite = assortativity_passive_y(*p.y_finite, beta_n);
  }
  p.alpha = clustering_passive(z_dist, beta_n, m);
  p.neighbours = neighbour_stats_passive(p.model, top);
  p.degree_pmf = compound_pmf(p.model, top);
  double mass = 0.0;
  for (double v : p.degree_pmf) mass += v;
  p.tail_mass = std::max(0.0, 1.0 - mass);
  return p;
}

PassivePrediction predict_passive(const PassiveModelSpec& spec, std::optional<std::size_t> kmax) {
  spec.validate();
  return predict_passive(spec.size_dist, spec.beta(), static_cast<double>(spec.m), kmax,
                         &spec.size_dist);
}

namespace {

nlohmann::json to_json(const FactorialMoments& y) {
  return {{"y2", y.y2}, {"y3", y.y3}, {"y4", y.y4}};
}

}  // namespace

nlohmann::json to_json(const PassivePrediction& p) {
  nlohmann::json pmf = nlohmann::json::array();
  for (std::size_t k = 0; k < p.degree_pmf.size(); ++k) {
    pmf.push_back({{"k", k}, {"p", p.degree_pmf[k]}});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : p.neighbours.rows) {
    std::optional<double> alpha_k;
    if (row.h && row.k >= 2) alpha_k = *row.h / (row.k - 1);
    rows.push_back({{"k", row.k},
                    {"b_k", optional_json(row.b)},
                    {"h_k", optional_json(row.h)},
                    {"alpha_k", optional_json(alpha_k)}});
  }
  nlohmann::json moments = {{"y_limit", to_json(p.y_limit)},
                            {"delta", p.delta.raw},
                            {"delta_factorial", p.delta.factorial}};
  moments["y_finite"] = p.y_finite ? to_json(*p.y_finite) : nlohmann::json(nullptr);
  return {{"model", "passive"},
          {"beta", p.model.beta},
          {"m", optional_json(p.m)},
          {"z_dist", p.model.z_dist.to_json()},
          {"lambda", p.model.lambda},
          {"mean_degree", p.delta.raw[0]},
          {"b", optional_json(p.neighbours.b.value)},
          {"h", optional_json(p.neighbours.h.value)},
          {"r", optional_json(p.r.value)},
          {"alpha", optional_json(p.alpha)},
          {"r_forms", to_json(p.r)},
          {"r_finite", optional_json(p.r_finite)},
          {"b_forms", to_json(p.neighbours.b)},
          {"h_forms", to_json(p.neighbours.h)},
          {"moments", std::move(moments)},
          {"tail_mass", p.tail_mass},
          {"degree_pmf", std::move(pmf)},
          {"per_k", std::move(rows)}};
}

}  // namespace rig
