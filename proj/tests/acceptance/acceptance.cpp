// Acceptance suite: ten checks, one PASS/FAIL line each.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "rig/active_graph.hpp"
#include "rig/graph_stats.hpp"
#include "rig/harness.hpp"
#include "rig/oracle.hpp"
#include "rig/theory_active.hpp"
#include "rig/theory_passive.hpp"
#include "support.hpp"

using rig::SizeDistribution;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

bool close(const std::optional<double>& a, double b, double tol) {
  return a && std::abs(*a - b) <= tol;
}

bool same(const std::optional<double>& a, const std::optional<double>& b, double tol) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::abs(*a - *b) <= tol;
}

rig::ExperimentConfig load(const std::string& name) {
  std::ifstream in(std::string(RIG_SOURCE_DIR) + "/tests/acceptance/" + name);
  if (!in) throw std::runtime_error("missing acceptance config " + name);
  return rig::ExperimentConfig::from_json(nlohmann::json::parse(in));
}

// Reports are shared between criteria 5/6/10 and 7.
std::optional<rig::ExperimentReport> g_active;

const rig::ExperimentReport& active_report() {
  if (!g_active) g_active = rig::run_experiment(load("active_degenerate3.json"));
  return *g_active;
}

// Identity h_k = (k-1) alpha^[k] on every replicate graph of a config.
void check_identity(Check& c, const rig::ExperimentConfig& config) {
  for (std::uint32_t i = 0; i < config.replicates; ++i) {
    const auto s = rig::compute_stats(rig::generate_replicate(config, i));
    for (const auto& row : s.per_k) {
      if (row.h_k && row.alpha_k) {
        c.require(std::abs(*row.h_k - (row.k - 1.0) * *row.alpha_k) <= 1e-12,
                  "identity on replicate " + std::to_string(i) + " k=" + std::to_string(row.k));
      }
    }
  }
}

// ------------------------------------------------------------------------

void criterion1(Check& c) {
  const auto k3 = rig::compute_stats(test::triangle());
  const auto p3 = rig::compute_stats(test::path3());
  const auto p4 = rig::compute_stats(test::path4());
  const auto star = rig::compute_stats(test::star3());
  const auto k4e = rig::compute_stats(test::k4_minus_edge());
  const double t = 1e-12;

  c.require(close(k3.b, 2, t) && close(k3.b_prime, 4, t) && close(k3.g, 4, t) && close(k3.h, 1, t),
            "K3 edge moments");
  c.require(close(p3.b, 1.5, t) && close(p3.b_prime, 2.5, t) && close(p3.g, 2, t) && close(p3.h, 0, t),
            "P3 edge moments");
  c.require(close(star.b, 2, t) && close(star.b_prime, 5, t) && close(star.g, 3, t) &&
                close(star.h, 0, t),
            "K13 edge moments");
  c.require(!k3.r, "r(K3) undefined");
  c.require(close(p4.r, -0.5, t), "r(P4) = -0.5");
  c.require(close(star.r, -1.0, t), "r(K13) = -1");
  c.require(close(k3.alpha, 1, t) && close(star.alpha, 0, t) && close(k4e.alpha, 0.75, t),
            "global clustering");
  c.require(close(k4e.row(3)->alpha_k, 2.0 / 3, t), "alpha^[3](K4-e) = 2/3");
  c.require(close(k3.row(2)->alpha_k, 1, t) && close(star.row(3)->alpha_k, 0, t), "alpha^[k]");
  c.require(close(star.row(1)->b_k, 3, t) && close(star.row(1)->h_k, 0, t), "K13 k=1");
  c.require(close(k3.row(2)->b_k, 2, t) && close(k3.row(2)->h_k, 1, t), "K3 k=2");
  // h_2(K4-e) is 1: each hub shares only the other hub with a degree-2 vertex
  c.require(close(k4e.row(2)->b_k, 3, t) && close(k4e.row(2)->h_k, 1, t), "K4-e k=2");
  c.require(k3.degree_histogram == std::map<std::uint32_t, std::uint64_t>{{2, 3}} &&
                star.degree_histogram == std::map<std::uint32_t, std::uint64_t>{{1, 3}, {3, 1}} &&
                rig::compute_stats(rig::Graph(5)).degree_histogram ==
                    std::map<std::uint32_t, std::uint64_t>{{0, 5}},
            "degree histograms");
  c.detail << "5 fixtures";
}

void criterion2_3(Check& c2, Check& c3) {
  rig::Rng rng(2024, 2);
  double worst = 0.0;
  std::uint64_t identity_checks = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<rig::Vertex>(1 + rng.below(30));
    const auto g = rig::oracle::random_graph(n, rng.uniform(), rng());
    const auto s = rig::compute_stats(g);
    const auto o = rig::oracle::brute_force_stats(g);
    const auto track = [&](const std::optional<double>& a, const std::optional<double>& b) {
      if (a && b) worst = std::max(worst, std::abs(*a - *b));
      return same(a, b, 1e-12);
    };
    bool ok = track(s.b, o.b) && track(s.b_prime, o.b_prime) && track(s.g, o.g) && track(s.h, o.h) &&
              track(s.r, o.r) && track(s.alpha, o.alpha) && s.degree_histogram == o.histogram;
    for (const auto& row : s.per_k) {
      const auto it = o.per_k.find(row.k);
      ok = ok && it != o.per_k.end() && row.pair_count == it->second.pair_count &&
           track(row.b_k, it->second.b_k) && track(row.h_k, it->second.h_k) &&
           track(row.alpha_k, it->second.alpha_k);
      if (row.h_k && row.alpha_k) {
        ++identity_checks;
        c3.require(std::abs(*row.h_k - (row.k - 1.0) * *row.alpha_k) <= 1e-12,
                   "identity on random graph " + std::to_string(t));
      }
    }
    c2.require(ok, "random graph " + std::to_string(t));
  }
  c2.detail << "200 graphs, max |fast - brute| = " << worst;

  // the generated intersection graphs of criteria 5 and 7
  for (const char* name : {"active_degenerate3.json", "passive_degenerate4.json", "passive_uniform23.json"}) {
    check_identity(c3, load(name));
  }
  c3.detail << identity_checks << " random-graph classes + 90 generated graphs";
}

void criterion4(Check& c) {
  std::uint64_t cases = 0;
  for (std::uint32_t m = 1; m <= 7; ++m) {
    for (std::uint32_t s = 1; s <= std::min(3u, m); ++s) {
      for (std::uint32_t k1 = 0; k1 <= m; ++k1) {
        for (std::uint32_t k2 = 0; k2 <= m; ++k2) {
          ++cases;
          const double p = rig::edge_probability_exact(m, s, k1, k2);
          c.require(p == rig::oracle::enumerate_edge_probability(m, s, k1, k2),
                    "exact m=" + std::to_string(m) + " s=" + std::to_string(s));
          if (s <= k1 && k1 <= k2) {
            const auto bounds = rig::overlap_probability_bounds(m, s, k1, k2);
            const double eq = rig::overlap_probability_exact(m, s, k1, k2);
            c.require(bounds.lower <= eq + 1e-15 && eq <= p + 1e-15 && p <= bounds.upper + 1e-15,
                      "bounds m=" + std::to_string(m));
          }
        }
      }
    }
  }
  c.detail << cases << " (m, s, k1, k2) cases";
}

void criterion5(Check& c) {
  const auto& rep = active_report();
  const auto mean = [&](const char* stat, std::optional<std::uint32_t> k = std::nullopt) {
    const auto* row = rep.find(stat, k);
    return row ? row->empirical_mean : std::nullopt;
  };
  const auto r = mean("r");
  const auto alpha = mean("alpha");
  const auto b = mean("b");
  const auto h = mean("h");
  c.require(close(r, 1.0 / 3, 0.05), "r");
  c.require(close(alpha, 1.0 / 3, 0.03), "alpha");
  c.require(close(b, 10, 0.3), "b");
  c.require(close(h, 3, 0.2), "h");
  double worst_rel = 0.0;
  for (std::uint32_t k = 6; k <= 12; ++k) {
    const auto hk = mean("h_k", k + 1);
    const double target = k / 3.0;
    if (hk) worst_rel = std::max(worst_rel, std::abs(*hk - target) / target);
    c.require(hk && std::abs(*hk - target) <= 0.15 * target, "h_{k+1} at k=" + std::to_string(k));
  }
  // total variation against Poisson(9), summed over every k
  double tv = 0.0;
  double covered = 0.0;
  const double total = static_cast<double>(rep.pooled_vertices);
  for (const auto& [k, count] : rep.pooled_histogram) {
    const double p = rig::poisson_pmf(9.0, k);
    tv += std::abs(count / total - p);
    covered += p;
  }
  tv = 0.5 * (tv + (1.0 - covered));
  c.require(tv <= 0.02, "TV distance");
  c.detail << "r=" << *r << " alpha=" << *alpha << " b=" << *b << " h=" << *h
           << " max rel h_{k+1} err=" << worst_rel << " TV=" << tv;
}

void criterion6(Check& c) {
  const auto& rep = active_report();
  const double gap = *rep.find("b")->empirical_mean - *rep.find("h")->empirical_mean;
  double worst = 0.0;
  int classes = 0;
  for (std::uint32_t k = 1; k <= rep.config.k_max; ++k) {
    const auto* bk = rep.find("b_k", k);
    const auto* hk = rep.find("h_k", k);
    if (!bk || bk->pair_count < 500) continue;
    ++classes;
    const double d = std::abs((*bk->empirical_mean - *hk->empirical_mean) - gap);
    worst = std::max(worst, d);
    c.require(d <= 0.7, "k=" + std::to_string(k));
  }
  c.require(classes > 0, "no degree class with 500 pairs");
  c.detail << classes << " classes, max deviation " << worst;
}

void criterion7(Check& c) {
  const auto four = rig::run_experiment(load("passive_degenerate4.json"));
  const double r4 = *four.find("r")->empirical_mean;
  const double b4 = *four.find("b")->empirical_mean;
  const double h4 = *four.find("h")->empirical_mean;
  c.require(std::abs(r4) <= 0.05, "degenerate(4) r");
  c.require(std::abs(b4 - 15) <= 0.8, "degenerate(4) b");
  c.require(std::abs(h4 - 2) <= 0.2, "degenerate(4) h");

  const auto config = load("passive_uniform23.json");
  const auto mixed = rig::run_experiment(config);
  const auto target = rig::assortativity_passive(config.size_dist, config.m / double(config.n));
  const double r23 = *mixed.find("r")->empirical_mean;
  c.require(std::abs(r23 - *target.value) <= 0.05, "uniform{2,3} r");

  const auto model = rig::CompoundPoissonModel::make(config.size_dist, 1.0);
  double worst_z = 0.0;
  int classes = 0;
  for (std::uint32_t k = 1; k <= config.k_max; ++k) {
    const auto* row = mixed.find("h_k", k);
    if (!row || row->pair_count < 500) continue;
    ++classes;
    const auto d2 = rig::conditional_d2star(model, k);
    const double expected = *d2 / k;
    const double se = row->standard_error.value_or(0.0);
    const double diff = std::abs(*row->empirical_mean - expected);
    if (se > 0) worst_z = std::max(worst_z, diff / se);
    c.require(diff <= 4 * se, "h_k within 4 SE at k=" + std::to_string(k));
  }
  c.detail << "degenerate(4): r=" << r4 << " b=" << b4 << " h=" << h4 << "; uniform{2,3}: r=" << r23
           << " vs " << *target.value << ", " << classes << " h_k classes, max |z|=" << worst_z;
}

void criterion8(Check& c) {
  std::vector<SizeDistribution> dists = {
      SizeDistribution::degenerate(2),
      SizeDistribution::degenerate(3),
      SizeDistribution::degenerate(5),
      SizeDistribution::table({{1, 0.5}, {3, 0.5}}),
      SizeDistribution::table({{2, 0.5}, {3, 0.5}}),
      SizeDistribution::table({{2, 0.5}, {5, 0.5}}),
      SizeDistribution::table({{0, 0.3}, {2, 0.3}, {4, 0.4}}),
      SizeDistribution::binomial(6, 0.5),
      SizeDistribution::binomial(10, 0.2),
      SizeDistribution::zipf(3.5, 12),
      SizeDistribution::zipf(2.5, 8),
      SizeDistribution::poisson(2.0, 12),
      SizeDistribution::table({{1, 0.9}, {6, 0.1}}),
      SizeDistribution::table({{2, 0.2}, {3, 0.3}, {4, 0.5}}),
      SizeDistribution::table({{1, 0.25}, {2, 0.25}, {7, 0.5}}),
  };
  int pairs = 0;
  double worst = 0.0;
  auto gap = [&](const rig::DualForm& f, const std::string& what) {
    c.require(f.gap().has_value() && *f.gap() <= 1e-10, what);
    if (f.gap()) worst = std::max(worst, *f.gap());
  };
  for (std::size_t i = 0; i < dists.size(); ++i) {
    for (double beta : {0.25, 1.0, 4.0, 16.0}) {
      ++pairs;
      const auto tag = " dist " + std::to_string(i) + " beta " + std::to_string(beta);
      const rig::ActiveLimitSpec active{dists[i], 1.0 / std::sqrt(beta), beta};
      gap(rig::assortativity_active(active), "active r" + tag);
      gap(rig::clustering_active(active), "active alpha" + tag);
      gap(rig::assortativity_passive(dists[i], beta), "passive r" + tag);
      const auto n = rig::neighbour_stats_passive(rig::CompoundPoissonModel::make(dists[i], beta), 5);
      gap(n.b, "passive b" + tag);
      gap(n.h, "passive h" + tag);
    }
  }
  c.detail << pairs << " (distribution, beta) pairs, max gap " << worst;
}

void criterion9(Check& c) {
  const std::vector<std::pair<SizeDistribution, double>> grid = {
      {SizeDistribution::degenerate(3), 1.0},
      {SizeDistribution::table({{1, 0.5}, {2, 0.5}}), 1.0},
      {SizeDistribution::table({{1, 0.5}, {2, 0.5}}), 2.0},
      {SizeDistribution::table({{2, 0.5}, {3, 0.5}}), 1.0},
      {SizeDistribution::binomial(6, 0.4), 0.5},
      {SizeDistribution::zipf(3.5, 15), 0.25},
      {SizeDistribution::table({{0, 0.3}, {2, 0.3}, {5, 0.4}}), 2.0},
      {SizeDistribution::poisson(3.0, 15), 1.5},
  };
  double sup = 0.0;
  double moment_gap = 0.0;
  for (const auto& [z, beta] : grid) {
    const auto model = rig::CompoundPoissonModel::make(z, beta);
    const auto fast = rig::compound_pmf(model, 100);
    const auto slow = rig::oracle::compound_pmf_convolution(z, beta, 100, 300);
    for (std::size_t k = 0; k <= 100; ++k) sup = std::max(sup, std::abs(fast[k] - slow[k]));

    const auto table = rig::compound_pmf(model, 1000);
    const auto dm = rig::delta_star_moments(model);
    double f[3] = {0, 0, 0};
    for (std::size_t k = 0; k < table.size(); ++k) {
      const double x = double(k);
      f[0] += table[k] * x;
      f[1] += table[k] * x * (x - 1);
      f[2] += table[k] * x * (x - 1) * (x - 2);
    }
    for (int i = 0; i < 3; ++i) moment_gap = std::max(moment_gap, std::abs(f[i] - dm.factorial[i]));
  }
  c.require(sup <= 1e-10, "recursion vs convolution");
  c.require(moment_gap <= 1e-9, "moments vs pmf table");

  struct Point {
    SizeDistribution z;
    double beta;
    std::size_t k;
  };
  const auto two_three = SizeDistribution::table({{2, 0.5}, {3, 0.5}});
  const auto wide = SizeDistribution::table({{0, 0.3}, {2, 0.3}, {5, 0.4}});
  const std::vector<Point> points = {
      {two_three, 1.0, 3}, {two_three, 1.0, 4}, {two_three, 1.0, 6}, {wide, 2.0, 5}, {wide, 2.0, 8}};
  double worst_z = 0.0;
  std::uint64_t seed = 900;
  for (const auto& p : points) {
    const auto mc = rig::oracle::monte_carlo_d2star(p.z, p.beta, p.k, 10'000'000, seed++);
    const auto exact = rig::conditional_d2star(rig::CompoundPoissonModel::make(p.z, p.beta), p.k);
    const auto& est = mc[p.k];
    const bool ok = exact && est.hits > 1 && std::abs(est.mean - *exact) <= 4 * est.standard_error;
    if (exact && est.standard_error > 0) worst_z = std::max(worst_z, std::abs(est.mean - *exact) / est.standard_error);
    c.require(ok, "Monte Carlo at k=" + std::to_string(p.k));
  }
  c.detail << "sup-norm " << sup << ", moment gap " << moment_gap << ", MC max |z| " << worst_z;
}

void criterion10(Check& c) {
  const auto& first = active_report();
  const auto config = load("active_degenerate3.json");
  const auto again = rig::run_experiment(config, 2);
  const auto once = rig::run_experiment(config, 1);
  const auto a = rig::to_json(once).dump(2);
  c.require(a == rig::to_json(again).dump(2), "JSON report, 1 vs 2 workers");
  c.require(a == rig::to_json(first).dump(2), "JSON report, default workers");
  c.require(rig::to_csv(once) == rig::to_csv(again), "CSV report");

  const auto passive = load("passive_uniform23.json");
  c.require(rig::to_json(rig::run_experiment(passive, 1)).dump(2) ==
                rig::to_json(rig::run_experiment(passive, 3)).dump(2),
            "passive report, 1 vs 3 workers");
  c.detail << "active report " << a.size() << " bytes";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget_seconds;
    std::function<void(Check&)> run;
  };
  Check c3;
  const std::vector<Criterion> criteria = {
      {1, "hand-graph exactness", 1, criterion1},
      {2, "brute-force oracle equivalence", 30, [&](Check& c) { criterion2_3(c, c3); }},
      {3, "identity h_k = (k-1) alpha^[k]", 30, [&](Check& c) {
         c.ok = c3.ok;
         c.detail << c3.detail.str();
       }},
      {4, "edge-probability oracle and bounds", 10, criterion4},
      {5, "active convergence, degenerate(3)", 120, criterion5},
      {6, "b_k - h_k = b - h at finite n", 120, criterion6},
      {7, "passive convergence", 180, criterion7},
      {8, "dual-formula agreement", 5, criterion8},
      {9, "compound-Poisson engine", 60, criterion9},
      {10, "determinism across worker counts", 600, criterion10},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.budget_seconds) {
      check.ok = false;
      check.detail << "; runtime " << secs << " s over budget " << cr.budget_seconds << " s";
    }
    failures += check.ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.2f s) %s\n", check.ok ? "PASS" : "FAIL", cr.id, cr.title, secs,
                check.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
