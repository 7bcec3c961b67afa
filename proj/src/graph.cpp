#include "rig/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rig {

Graph::Graph(Vertex n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {}

Graph Graph::from_edges(Vertex n, std::vector<Edge> edges) {
  std::vector<std::uint64_t> packed;
  packed.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") out of range for " + std::to_string(n) + " vertices");
    }
    packed.push_back(pack_edge(e.u, e.v));
  }
  return from_packed(n, std::move(packed));
}

Graph Graph::from_packed(Vertex n, std::vector<std::uint64_t> packed) {
  std::sort(packed.begin(), packed.end());
  packed.erase(std::unique(packed.begin(), packed.end()), packed.end());

  Graph g(n);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (auto p : packed) {
    const auto u = static_cast<Vertex>(p >> 32);
    const auto v = static_cast<Vertex>(p);
    if (u == v || v >= n) throw std::invalid_argument("invalid packed edge");
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  g.offsets_ = counts;
  g.targets_.resize(packed.size() * 2);
  // First pass writes each vertex's smaller neighbours, second pass its larger
  // ones. Both arrive in ascending order because packed is sorted.
  std::vector<std::uint64_t> cursor(counts.begin(), counts.end() - 1);
  for (auto p : packed) {
    const auto u = static_cast<Vertex>(p >> 32);
    const auto v = static_cast<Vertex>(p);
    g.targets_[cursor[v]++] = u;
  }
  for (auto p : packed) {
    const auto u = static_cast<Vertex>(p >> 32);
    const auto v = static_cast<Vertex>(p);
    g.targets_[cursor[u]++] = v;
  }
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const noexcept {
  if (u >= n_ || v >= n_) return false;
  auto nb = neighbours(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbours(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# vertices " << g.vertex_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::int64_t declared = -1;
  Vertex max_id = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      std::int64_t value = 0;
      if (hs >> key && key == "vertices") {
        if (!(hs >> value) || value < 0 || value > 0xffffffffLL) {
          throw std::invalid_argument("line " + std::to_string(lineno) +
                                      ": malformed vertices header");
        }
        declared = value;
      }
      continue;
    }
    std::istringstream ls(line);
    std::int64_t u = -1;
    std::int64_t v = -1;
    std::string rest;
    if (!(ls >> u >> v) || (ls >> rest) || u < 0 || v < 0 || u > 0xfffffffeLL ||
        v > 0xfffffffeLL) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'u v'");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    max_id = std::max({max_id, static_cast<Vertex>(u), static_cast<Vertex>(v)});
    any = true;
  }
  const Vertex n = declared >= 0 ? static_cast<Vertex>(declared) : (any ? max_id + 1 : 0);
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace rig
