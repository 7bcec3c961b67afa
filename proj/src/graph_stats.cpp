#include "rig/graph_stats.hpp"

#include <algorithm>
#include <sstream>

namespace rig {

namespace {

using Int = __int128;

// Integer per-vertex sums from which every statistic is a ratio.
struct Tallies {
  std::vector<std::uint32_t> degree;
  std::vector<std::uint64_t> common_sum;      // sum over neighbours u of d(u, v)
  std::vector<std::uint64_t> neighbour_deg;   // sum over neighbours u of d(u)
  std::uint64_t ordered_pairs = 0;            // 2|E|
  std::uint64_t sum_deg_sq = 0;               // sum_v d(v)^2
  std::uint64_t sum_deg_cube = 0;             // sum_v d(v)^3
  std::uint64_t sum_edge_deg_product = 0;     // sum over unordered edges d(u) d(v)
  std::uint64_t sum_common = 0;               // sum over unordered edges d(u, v)
  std::uint64_t wedges = 0;
};

std::uint32_t count_common(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::uint32_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

Tallies tally(const Graph& g) {
  const Vertex n = g.vertex_count();
  Tallies t;
  t.degree.resize(n);
  t.common_sum.assign(n, 0);
  t.neighbour_deg.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(v);
    t.degree[v] = static_cast<std::uint32_t>(d);
    t.ordered_pairs += d;
    t.sum_deg_sq += d * d;
    t.sum_deg_cube += d * d * d;
    t.wedges += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  for (Vertex u = 0; u < n; ++u) {
    const auto nu = g.neighbours(u);
    for (Vertex v : nu) {
      t.neighbour_deg[u] += t.degree[v];
      if (v < u) continue;
      const std::uint32_t c = count_common(nu, g.neighbours(v));
      t.common_sum[u] += c;
      t.common_sum[v] += c;
      t.sum_common += c;
      t.sum_edge_deg_product += static_cast<std::uint64_t>(t.degree[u]) * t.degree[v];
    }
  }
  return t;
}

struct DegreeClass {
  std::uint64_t vertices = 0;
  std::uint64_t neighbour_deg = 0;
  std::uint64_t common = 0;
};

DegreeClass degree_class(const Tallies& t, std::uint32_t k) {
  DegreeClass c;
  for (std::size_t v = 0; v < t.degree.size(); ++v) {
    if (t.degree[v] != k) continue;
    ++c.vertices;
    c.neighbour_deg += t.neighbour_deg[v];
    c.common += t.common_sum[v];
  }
  return c;
}

PerDegreeRow make_row(std::uint32_t k, const DegreeClass& c) {
  PerDegreeRow row;
  row.k = k;
  row.vertex_count = c.vertices;
  row.pair_count = c.vertices * k;
  if (row.pair_count > 0) {
    row.b_k = static_cast<double>(c.neighbour_deg) / static_cast<double>(row.pair_count);
    row.h_k = static_cast<double>(c.common) / static_cast<double>(row.pair_count);
  }
  if (k >= 2 && c.vertices > 0) {
    // common counts each triangle at v twice
    row.alpha_k = static_cast<double>(c.common) /
                  (static_cast<double>(c.vertices) * k * (k - 1));
  }
  return row;
}

EdgeMoments moments_from(const Tallies& t) {
  if (t.ordered_pairs == 0) throw NoEdgesError();
  const double pairs = static_cast<double>(t.ordered_pairs);
  return {static_cast<double>(t.sum_deg_sq) / pairs, static_cast<double>(t.sum_deg_cube) / pairs,
          2.0 * static_cast<double>(t.sum_edge_deg_product) / pairs,
          2.0 * static_cast<double>(t.sum_common) / pairs};
}

std::optional<double> assortativity_from(const Tallies& t) {
  if (t.ordered_pairs == 0) throw NoEdgesError();
  // Exact integer numerators over (2|E|)^2.
  const Int pairs = t.ordered_pairs;
  const Int sq = t.sum_deg_sq;
  const Int var = static_cast<Int>(t.sum_deg_cube) * pairs - sq * sq;
  const Int cov = 2 * static_cast<Int>(t.sum_edge_deg_product) * pairs - sq * sq;
  const double scale = static_cast<double>(t.ordered_pairs) * static_cast<double>(t.ordered_pairs);
  const double variance = static_cast<double>(var) / scale;
  if (variance < 1e-12) return std::nullopt;
  return static_cast<double>(cov) / static_cast<double>(var);
}

std::optional<double> clustering_from(const Tallies& t) {
  if (t.wedges == 0) return std::nullopt;
  return static_cast<double>(t.sum_common) / static_cast<double>(t.wedges);
}

}  // namespace

const PerDegreeRow* EmpiricalStats::row(std::uint32_t k) const {
  auto it = std::lower_bound(per_k.begin(), per_k.end(), k,
                             [](const PerDegreeRow& r, std::uint32_t x) { return r.k < x; });
  return (it != per_k.end() && it->k == k) ? &*it : nullptr;
}

EdgeMoments edge_moments(const Graph& g) { return moments_from(tally(g)); }

std::optional<double> assortativity(const Graph& g) { return assortativity_from(tally(g)); }

ConditionalMoments conditional_moments(const Graph& g, std::uint32_t k) {
  const auto row = make_row(k, degree_class(tally(g), k));
  return {k, row.pair_count, row.b_k, row.h_k};
}

std::optional<double> clustering_global(const Graph& g) { return clustering_from(tally(g)); }

std::optional<double> clustering_k(const Graph& g, std::uint32_t k) {
  return make_row(k, degree_class(tally(g), k)).alpha_k;
}

std::map<std::uint32_t, std::uint64_t> degree_histogram(const Graph& g) {
  std::map<std::uint32_t, std::uint64_t> hist;
  for (Vertex v = 0; v < g.vertex_count(); ++v) ++hist[g.degree(v)];
  return hist;
}

EmpiricalStats compute_stats(const Graph& g) {
  const auto t = tally(g);
  EmpiricalStats s;
  s.vertex_count = g.vertex_count();
  s.edge_count = g.edge_count();
  s.triangles = t.sum_common / 3;
  s.wedges = t.wedges;
  const double n = s.vertex_count;
  s.edge_density = s.vertex_count >= 2 ? static_cast<double>(s.edge_count) / (n * (n - 1) / 2) : 0.0;
  s.mean_degree = s.vertex_count > 0 ? static_cast<double>(t.ordered_pairs) / n : 0.0;
  if (t.ordered_pairs > 0) {
    const auto mom = moments_from(t);
    s.b = mom.b;
    s.b_prime = mom.b_prime;
    s.g = mom.g;
    s.h = mom.h;
    s.r = assortativity_from(t);
  }
  s.alpha = clustering_from(t);

  std::map<std::uint32_t, DegreeClass> classes;
  for (std::size_t v = 0; v < t.degree.size(); ++v) {
    auto& c = classes[t.degree[v]];
    ++c.vertices;
    c.neighbour_deg += t.neighbour_deg[v];
    c.common += t.common_sum[v];
  }
  for (const auto& [k, c] : classes) {
    s.degree_histogram[k] = c.vertices;
    if (k >= 1) s.per_k.push_back(make_row(k, c));
  }
  return s;
}

namespace {

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const EmpiricalStats& s) {
  nlohmann::json hist = nlohmann::json::array();
  nlohmann::json pmf = nlohmann::json::array();
  for (const auto& [k, c] : s.degree_histogram) {
    hist.push_back({{"k", k}, {"count", c}});
    pmf.push_back({{"k", k}, {"p", static_cast<double>(c) / s.vertex_count}});
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : s.per_k) {
    rows.push_back({{"k", r.k},
                    {"vertex_count", r.vertex_count},
                    {"pair_count", r.pair_count},
                    {"b_k", opt(r.b_k)},
                    {"h_k", opt(r.h_k)},
                    {"alpha_k", opt(r.alpha_k)}});
  }
  return {{"vertex_count", s.vertex_count},
          {"edge_count", s.edge_count},
          {"triangles", s.triangles},
          {"wedges", s.wedges},
          {"edge_density", s.edge_density},
          {"mean_degree", s.mean_degree},
          {"b", opt(s.b)},
          {"b_prime", opt(s.b_prime)},
          {"g", opt(s.g)},
          {"h", opt(s.h)},
          {"r", opt(s.r)},
          {"alpha", opt(s.alpha)},
          {"degree_histogram", std::move(hist)},
          {"degree_pmf", std::move(pmf)},
          {"per_k", std::move(rows)}};
}

std::string per_k_csv(const EmpiricalStats& s) {
  std::ostringstream out;
  out.precision(17);
  auto cell = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  out << "k,degree_pmf,pair_count,b_k,h_k,alpha_k\n";
  for (const auto& [k, count] : s.degree_histogram) {
    out << k << ',' << static_cast<double>(count) / s.vertex_count << ',';
    if (const auto* r = s.row(k)) {
      out << r->pair_count << ',';
      cell(r->b_k);
      out << ',';
      cell(r->h_k);
      out << ',';
      cell(r->alpha_k);
    } else {
      out << "0,,,";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace rig
