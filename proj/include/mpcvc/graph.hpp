#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "mpcvc/rng.hpp"

namespace mpcvc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Set of vertex ids over a declared universe [0, n). Membership mask plus a
// cached count; O(1) membership tests dominate the workload.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : mask_(universe, 0) {}

  static VertexSet full(std::size_t universe);
  static VertexSet of(std::size_t universe, std::initializer_list<Vertex> vs);
  static VertexSet of(std::size_t universe, const std::vector<Vertex>& vs);

  [[nodiscard]] std::size_t universe() const { return mask_.size(); }
  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] bool empty() const { return count_ == 0; }
  [[nodiscard]] bool contains(Vertex v) const {
    return v < mask_.size() && mask_[v] != 0;
  }

  void insert(Vertex v);
  void erase(Vertex v);

  [[nodiscard]] std::vector<Vertex> sorted() const;
  [[nodiscard]] VertexSet complement() const;

  bool operator==(const VertexSet&) const = default;

 private:
  std::vector<std::uint8_t> mask_;
  std::size_t count_ = 0;
};

// Immutable simple undirected graph in compressed adjacency form. Each edge is
// stored in both endpoints' lists; num_edges() counts it once.
class Graph {
 public:
  Graph() = default;

  // Validates: ids in range, no self-loops, no duplicate edges.
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);

  [[nodiscard]] std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t num_edges() const { return m_; }
  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] std::size_t degree(Vertex v) const {
    return offsets_[v + 1] - offsets_[v];
  }

  // Edges as (u, v) with u < v, sorted.
  [[nodiscard]] std::vector<Edge> edge_list() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_;  // size n+1
  std::vector<Vertex> adj_;           // sorted per vertex
  std::size_t m_ = 0;
};

// Erdos-Renyi G(n, p); deterministic under seed.
Graph gen_gnp(std::size_t n, double p, RngSeed seed);

// Random bipartite graph; left ids [0, nl), right ids [nl, nl+nr).
Graph gen_bipartite_gnp(std::size_t nl, std::size_t nr, double p, RngSeed seed);

// Subgraph on exactly the vertices of vs; original ids retained (the result
// keeps the parent universe size, vertices outside vs become isolated).
Graph induced_subgraph(const Graph& g, const VertexSet& vs);

// |N(v) ∩ s|.
std::size_t degree_to(const Graph& g, Vertex v, const VertexSet& s);

bool is_vertex_cover(const Graph& g, const VertexSet& c);

// Plain-text edge list: first line "n m", then m lines "u v" with u < v.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace mpcvc
