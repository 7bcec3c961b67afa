#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace rig {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable simple undirected graph in compressed sparse row form.
///
/// Neighbour lists are sorted ascending; no self-loops, no duplicates, and
/// u in adj(v) iff v in adj(u).
class Graph {
 public:
  Graph() = default;

  /// Empty graph on n vertices.
  explicit Graph(Vertex n);

  /// Builds from an arbitrary edge list. Edges may appear in either
  /// orientation and more than once; duplicates are merged. Self-loops and
  /// out-of-range endpoints throw std::invalid_argument.
  static Graph from_edges(Vertex n, std::vector<Edge> edges);

  /// Same, from edges packed as (u << 32) | v with u < v. The vector is
  /// sorted and deduplicated in place.
  static Graph from_packed(Vertex n, std::vector<std::uint64_t> packed);

  Vertex vertex_count() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const Vertex> neighbours(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(Vertex v) const noexcept {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  bool adjacent(Vertex u, Vertex v) const noexcept;

  /// Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Vertex n_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<Vertex> targets_;
};

constexpr std::uint64_t pack_edge(Vertex u, Vertex v) noexcept {
  return u < v ? (static_cast<std::uint64_t>(u) << 32) | v
               : (static_cast<std::uint64_t>(v) << 32) | u;
}

/// Text edge list: a "# vertices N" header, then one "u v" line per edge
/// with u < v, sorted lexicographically.
void write_edge_list(std::ostream& out, const Graph& g);

/// Reads the format above. Blank lines and other '#' lines are ignored.
/// Without a vertices header the vertex count is max id + 1.
Graph read_edge_list(std::istream& in);

}  // namespace rig
