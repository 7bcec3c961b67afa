#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rig/active_graph.hpp"
#include "rig/graph_stats.hpp"
#include "rig/oracle.hpp"
#include "rig/passive_graph.hpp"
#include "support.hpp"

using doctest::Approx;
using rig::Graph;

namespace {

void check_moments(const Graph& g, double b, double bp, double gg, double h) {
  const auto m = rig::edge_moments(g);
  CHECK(m.b == Approx(b).epsilon(1e-12));
  CHECK(m.b_prime == Approx(bp).epsilon(1e-12));
  CHECK(m.g == Approx(gg).epsilon(1e-12));
  CHECK(m.h == Approx(h).epsilon(1e-12));
}

bool same(const std::optional<double>& a, const std::optional<double>& b, double tol = 1e-12) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::abs(*a - *b) <= tol;
}

Graph cycle(rig::Vertex n) {
  std::vector<rig::Edge> edges;
  for (rig::Vertex i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("edge moments of small graphs") {
  check_moments(test::triangle(), 2, 4, 4, 1);
  check_moments(test::path3(), 1.5, 2.5, 2, 0);
  check_moments(test::star3(), 2, 5, 3, 0);
  CHECK_THROWS_AS(rig::edge_moments(Graph(4)), rig::NoEdgesError);
}

TEST_CASE("assortativity") {
  CHECK_FALSE(rig::assortativity(test::triangle()).has_value());
  CHECK_FALSE(rig::assortativity(cycle(7)).has_value());
  CHECK(*rig::assortativity(test::star3()) == Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(*rig::assortativity(test::path4()) + 0.5) <= 1e-12);
  CHECK_THROWS_AS(rig::assortativity(Graph(2)), rig::NoEdgesError);
}

TEST_CASE("conditional moments") {
  auto c = rig::conditional_moments(test::star3(), 1);
  CHECK(c.pair_count == 3);
  CHECK(*c.b_k == 3.0);
  CHECK(*c.h_k == 0.0);

  c = rig::conditional_moments(test::triangle(), 2);
  CHECK(*c.b_k == 2.0);
  CHECK(*c.h_k == 1.0);

  c = rig::conditional_moments(test::k4_minus_edge(), 2);
  CHECK(c.pair_count == 4);
  CHECK(*c.b_k == 3.0);
  // each hub shares exactly one neighbour (the other hub) with a degree-2
  // vertex, so h_2 = 1 = (2 - 1) * alpha^[2]
  CHECK(*c.h_k == 1.0);

  c = rig::conditional_moments(test::k4_minus_edge(), 5);
  CHECK(c.pair_count == 0);
  CHECK_FALSE(c.b_k.has_value());
  CHECK_FALSE(c.h_k.has_value());
}

TEST_CASE("clustering") {
  CHECK(*rig::clustering_global(test::triangle()) == 1.0);
  CHECK(*rig::clustering_global(test::star3()) == 0.0);
  CHECK(std::abs(*rig::clustering_global(test::k4_minus_edge()) - 0.75) <= 1e-12);
  CHECK_FALSE(rig::clustering_global(Graph::from_edges(2, {{0, 1}})).has_value());

  CHECK(*rig::clustering_k(test::triangle(), 2) == 1.0);
  CHECK(*rig::clustering_k(test::star3(), 3) == 0.0);
  CHECK(std::abs(*rig::clustering_k(test::k4_minus_edge(), 3) - 2.0 / 3) <= 1e-12);
  CHECK_FALSE(rig::clustering_k(test::k4_minus_edge(), 4).has_value());
}

TEST_CASE("degree histogram") {
  using H = std::map<std::uint32_t, std::uint64_t>;
  CHECK(rig::degree_histogram(test::triangle()) == H{{2, 3}});
  CHECK(rig::degree_histogram(test::star3()) == H{{1, 3}, {3, 1}});
  CHECK(rig::degree_histogram(Graph(5)) == H{{0, 5}});
}

TEST_CASE("empty graph statistics are undefined, not zero") {
  const auto s = rig::compute_stats(Graph(5));
  CHECK(s.edge_count == 0);
  CHECK_FALSE(s.b.has_value());
  CHECK_FALSE(s.r.has_value());
  CHECK_FALSE(s.alpha.has_value());
  CHECK(s.per_k.empty());
  CHECK(s.mean_degree == 0.0);
  const auto none = rig::compute_stats(Graph(0));
  CHECK(none.vertex_count == 0);
}

TEST_CASE("compute_stats agrees with the single-purpose functions") {
  const auto g = test::k4_minus_edge();
  const auto s = rig::compute_stats(g);
  const auto m = rig::edge_moments(g);
  CHECK(*s.b == m.b);
  CHECK(*s.h == m.h);
  CHECK(s.triangles == 2);
  CHECK(s.wedges == 8);
  CHECK(*s.alpha == 0.75);
  CHECK(s.edge_density == Approx(5.0 / 6));
  CHECK(s.mean_degree == 2.5);
  REQUIRE(s.row(3) != nullptr);
  CHECK(*s.row(3)->alpha_k == Approx(2.0 / 3).epsilon(1e-12));
  CHECK(s.row(3)->vertex_count == 2);
  CHECK(s.row(3)->pair_count == 6);
  CHECK(s.row(4) == nullptr);
}

TEST_CASE("brute-force oracle and exact identities on random graphs") {
  rig::Rng rng(1234, 0);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<rig::Vertex>(1 + rng.below(30));
    const auto g = rig::oracle::random_graph(n, rng.uniform(), rng());
    const auto s = rig::compute_stats(g);
    const auto o = rig::oracle::brute_force_stats(g);

    CHECK(same(s.b, o.b));
    CHECK(same(s.b_prime, o.b_prime));
    CHECK(same(s.g, o.g));
    CHECK(same(s.h, o.h));
    CHECK(same(s.r, o.r));
    CHECK(same(s.alpha, o.alpha));
    CHECK(s.degree_histogram == o.histogram);

    std::uint64_t total = 0;
    for (const auto& [k, c] : s.degree_histogram) total += c;
    CHECK(total == n);

    if (s.edge_count == 0) continue;
    std::uint64_t sum_d = 0;
    std::uint64_t sum_d2 = 0;
    for (rig::Vertex v = 0; v < n; ++v) {
      sum_d += g.degree(v);
      sum_d2 += std::uint64_t(g.degree(v)) * g.degree(v);
    }
    CHECK(*s.b == Approx(double(sum_d2) / sum_d).epsilon(1e-14));
    CHECK(*s.h >= 0.0);
    if (s.alpha) CHECK((*s.alpha >= 0.0 && *s.alpha <= 1.0));
    if (s.r) {
      CHECK(*s.r >= -1.0 - 1e-12);
      CHECK(*s.r <= 1.0 + 1e-12);
      CHECK(*s.b_prime >= *s.b * *s.b);
    }

    double weighted = 0.0;
    std::uint64_t pairs = 0;
    for (const auto& row : s.per_k) {
      const auto it = o.per_k.find(row.k);
      REQUIRE(it != o.per_k.end());
      CHECK(row.pair_count == it->second.pair_count);
      CHECK(same(row.b_k, it->second.b_k));
      CHECK(same(row.h_k, it->second.h_k));
      CHECK(same(row.alpha_k, it->second.alpha_k));
      const auto c = rig::conditional_moments(g, row.k);
      CHECK(same(c.b_k, row.b_k));
      CHECK(same(c.h_k, row.h_k));
      if (row.pair_count > 0) {
        weighted += row.pair_count * *row.b_k;
        pairs += row.pair_count;
      }
      if (row.alpha_k && row.h_k) CHECK(std::abs(*row.h_k - (row.k - 1.0) * *row.alpha_k) <= 1e-12);
    }
    CHECK(pairs == 2 * s.edge_count);
    CHECK(weighted / pairs == Approx(*s.b).epsilon(1e-12));
  }
}

TEST_CASE("conditioning on the first or second endpoint agrees") {
  rig::Rng rng(77, 0);
  for (int t = 0; t < 50; ++t) {
    const auto g = rig::oracle::random_graph(25, 0.2, rng());
    const auto s = rig::compute_stats(g);
    // condition on the first endpoint: mean degree of the second
    std::map<std::uint32_t, std::pair<double, std::uint64_t>> first;
    for (rig::Vertex u = 0; u < g.vertex_count(); ++u) {
      for (auto v : g.neighbours(u)) {
        first[g.degree(u)].first += g.degree(v);
        first[g.degree(u)].second += 1;
      }
    }
    for (const auto& row : s.per_k) {
      if (row.pair_count == 0) continue;
      CHECK(*row.b_k == Approx(first[row.k].first / first[row.k].second).epsilon(1e-12));
    }
  }
}

TEST_CASE("identity holds on generated intersection graphs") {
  const auto active =
      rig::generate_active({3000, 2000, 1, rig::SizeDistribution::binomial(6, 0.5), 3});
  const auto passive =
      rig::generate_passive({2000, 2000, rig::SizeDistribution::table({{2, 0.5}, {4, 0.5}}), 3});
  for (const auto& g : {active, passive}) {
    const auto s = rig::compute_stats(g);
    for (const auto& row : s.per_k) {
      if (row.alpha_k && row.h_k) CHECK(std::abs(*row.h_k - (row.k - 1.0) * *row.alpha_k) <= 1e-12);
    }
  }
}

TEST_CASE("serialization") {
  const auto s = rig::compute_stats(test::k4_minus_edge());
  const auto j = rig::to_json(s);
  CHECK(j.at("alpha").get<double>() == 0.75);
  CHECK(j.at("degree_histogram").size() == 2);
  CHECK(j.at("per_k").size() == 2);
  const auto csv = rig::per_k_csv(s);
  CHECK(csv.rfind("k,degree_pmf,pair_count,b_k,h_k,alpha_k\n", 0) == 0);
  CHECK(csv.find("\n2,0.5,4,3,1,1\n") != std::string::npos);

  const auto reg = rig::to_json(rig::compute_stats(test::triangle()));
  CHECK(reg.at("r").is_null());
}
