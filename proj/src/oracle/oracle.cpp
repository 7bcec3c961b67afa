#include "rig/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "rig/rng.hpp"

namespace rig::oracle {

BruteStats brute_force_stats(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges()) {
    adj[e.u][e.v] = 1;
    adj[e.v][e.u] = 1;
  }
  std::vector<double> deg(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) deg[i] += adj[i][j];
  }
  auto common = [&](std::uint32_t i, std::uint32_t j) {
    double c = 0.0;
    for (std::uint32_t l = 0; l < n; ++l) c += adj[i][l] && adj[j][l];
    return c;
  };

  BruteStats out;
  for (std::uint32_t i = 0; i < n; ++i) ++out.histogram[static_cast<std::uint32_t>(deg[i])];

  // Ordered adjacent pairs.
  std::vector<double> first;
  std::vector<double> second;
  std::vector<double> shared;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      if (!adj[i][j]) continue;
      first.push_back(deg[i]);
      second.push_back(deg[j]);
      shared.push_back(common(i, j));
    }
  }
  const double pairs = static_cast<double>(first.size());
  if (pairs > 0) {
    double b = 0, bp = 0, gg = 0, h = 0;
    for (std::size_t t = 0; t < first.size(); ++t) {
      b += first[t];
      bp += first[t] * first[t];
      gg += first[t] * second[t];
      h += shared[t];
    }
    out.b = b / pairs;
    out.b_prime = bp / pairs;
    out.g = gg / pairs;
    out.h = h / pairs;
    double mx = 0, my = 0;
    for (std::size_t t = 0; t < first.size(); ++t) {
      mx += first[t];
      my += second[t];
    }
    mx /= pairs;
    my /= pairs;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t t = 0; t < first.size(); ++t) {
      sxy += (first[t] - mx) * (second[t] - my);
      sxx += (first[t] - mx) * (first[t] - mx);
      syy += (second[t] - my) * (second[t] - my);
    }
    if (sxx / pairs >= 1e-12) out.r = sxy / std::sqrt(sxx * syy);

    std::map<std::uint32_t, std::pair<double, double>> sums;  // k -> (sum d(u), sum d(u,v))
    std::map<std::uint32_t, std::uint64_t> counts;
    for (std::size_t t = 0; t < first.size(); ++t) {
      const auto k = static_cast<std::uint32_t>(second[t]);
      sums[k].first += first[t];
      sums[k].second += shared[t];
      ++counts[k];
    }
    for (const auto& [k, c] : counts) {
      auto& row = out.per_k[k];
      row.pair_count = c;
      row.b_k = sums[k].first / static_cast<double>(c);
      row.h_k = sums[k].second / static_cast<double>(c);
    }
  }

  // Wedges centred at each vertex, closed or open.
  double closed = 0, wedges = 0;
  std::map<std::uint32_t, std::pair<double, double>> centred;  // k -> (closed, wedges)
  for (std::uint32_t c = 0; c < n; ++c) {
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!adj[c][i]) continue;
      for (std::uint32_t j = i + 1; j < n; ++j) {
        if (!adj[c][j]) continue;
        wedges += 1;
        closed += adj[i][j];
        auto& slot = centred[static_cast<std::uint32_t>(deg[c])];
        slot.first += adj[i][j];
        slot.second += 1;
      }
    }
  }
  if (wedges > 0) out.alpha = closed / wedges;
  for (const auto& [k, cw] : centred) {
    if (cw.second > 0) out.per_k[k].alpha_k = cw.first / cw.second;
  }
  return out;
}

namespace {

std::vector<std::uint32_t> masks_of_size(std::uint32_t m, std::uint32_t k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::uint32_t>(std::popcount(mask)) == k) out.push_back(mask);
  }
  return out;
}

}  // namespace

double enumerate_edge_probability(std::uint32_t m, std::uint32_t s, std::uint32_t k1,
                                  std::uint32_t k2) {
  if (m > 20) throw std::invalid_argument("enumeration limited to m <= 20");
  const auto a = masks_of_size(m, k1);
  const auto b = masks_of_size(m, k2);
  std::uint64_t hit = 0;
  for (auto x : a) {
    for (auto y : b) hit += static_cast<std::uint32_t>(std::popcount(x & y)) >= s;
  }
  return static_cast<double>(hit) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

std::vector<double> enumerate_passive_degree(std::uint32_t m,
                                             const std::vector<std::uint32_t>& sizes) {
  if (m > 20) throw std::invalid_argument("enumeration limited to m <= 20");
  std::vector<std::vector<std::uint32_t>> choices;
  for (auto k : sizes) choices.push_back(masks_of_size(m, k));
  std::vector<double> counts(m, 0.0);
  double total = 0.0;
  std::function<void(std::size_t, std::uint32_t)> walk = [&](std::size_t i, std::uint32_t reach) {
    if (i == choices.size()) {
      counts[static_cast<std::size_t>(std::popcount(reach & ~1u))] += 1.0;
      total += 1.0;
      return;
    }
    for (auto mask : choices[i]) walk(i + 1, (mask & 1u) ? (reach | mask) : reach);
  };
  walk(0, 0);
  for (auto& c : counts) c /= total;
  return counts;
}

namespace {

// q_j = (j+1) P(Z = j+1) / E Z, spelled out independently of the library.
std::vector<double> tilde_law(const SizeDistribution& z_dist) {
  double mean = 0.0;
  for (const auto& a : z_dist.support()) mean += static_cast<double>(a.value) * a.prob;
  if (mean == 0.0) return {1.0};
  std::vector<double> q(z_dist.max_value(), 0.0);
  for (const auto& a : z_dist.support()) {
    if (a.value >= 1) q[a.value - 1] += static_cast<double>(a.value) * a.prob / mean;
  }
  return q;
}

}  // namespace

std::vector<double> compound_pmf_convolution(const SizeDistribution& z_dist, double beta,
                                             std::size_t kmax, std::size_t lmax) {
  double mean = 0.0;
  for (const auto& a : z_dist.support()) mean += static_cast<double>(a.value) * a.prob;
  const double lambda = mean / beta;
  const auto q = tilde_law(z_dist);
  std::vector<double> fold(kmax + 1, 0.0);
  fold[0] = 1.0;
  std::vector<double> out(kmax + 1, 0.0);
  double weight = std::exp(-lambda);
  for (std::size_t L = 0; L <= lmax; ++L) {
    if (L > 0) {
      weight *= lambda / static_cast<double>(L);
      std::vector<double> next(kmax + 1, 0.0);
      for (std::size_t k = 0; k <= kmax; ++k) {
        if (fold[k] == 0.0) continue;
        for (std::size_t j = 0; j < q.size() && k + j <= kmax; ++j) next[k + j] += fold[k] * q[j];
      }
      fold.swap(next);
    }
    for (std::size_t k = 0; k <= kmax; ++k) out[k] += weight * fold[k];
  }
  return out;
}

std::vector<ConditionalEstimate> monte_carlo_d2star(const SizeDistribution& z_dist, double beta,
                                                    std::size_t kmax, std::uint64_t draws,
                                                    std::uint64_t seed) {
  double mean = 0.0;
  for (const auto& a : z_dist.support()) mean += static_cast<double>(a.value) * a.prob;
  const auto q = tilde_law(z_dist);
  std::vector<double> cdf(q.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) cdf[j] = (acc += q[j]);

  Rng rng(seed, 0xd25);
  std::poisson_distribution<std::uint64_t> lambda_law(mean / beta);
  std::vector<double> sum(kmax + 1, 0.0);
  std::vector<double> sum_sq(kmax + 1, 0.0);
  std::vector<std::uint64_t> hits(kmax + 1, 0);
  for (std::uint64_t t = 0; t < draws; ++t) {
    const std::uint64_t L = mean > 0.0 ? lambda_law(rng) : 0;
    std::uint64_t degree = 0;
    double pairs = 0.0;
    for (std::uint64_t i = 0; i < L; ++i) {
      const double u = rng.uniform() * acc;
      auto j = static_cast<std::uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      j = std::min<std::uint64_t>(j, q.size() - 1);
      degree += j;
      pairs += static_cast<double>(j) * (static_cast<double>(j) - 1.0);
    }
    if (degree > kmax) continue;
    ++hits[degree];
    sum[degree] += pairs;
    sum_sq[degree] += pairs * pairs;
  }
  std::vector<ConditionalEstimate> out(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    out[k].hits = hits[k];
    if (hits[k] == 0) continue;
    const double c = static_cast<double>(hits[k]);
    out[k].mean = sum[k] / c;
    if (hits[k] > 1) {
      const double var = std::max(0.0, (sum_sq[k] - c * out[k].mean * out[k].mean) / (c - 1.0));
      out[k].standard_error = std::sqrt(var / c);
    }
  }
  return out;
}

Graph random_graph(std::uint32_t n, double p, std::uint64_t seed) {
  Rng rng(seed, 0x9a);
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < p) edges.push_back({i, j});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace rig::oracle
