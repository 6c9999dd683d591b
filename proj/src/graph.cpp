#include "mpcvc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mpcvc/errors.hpp"

namespace mpcvc {

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  std::fill(s.mask_.begin(), s.mask_.end(), std::uint8_t{1});
  s.count_ = universe;
  return s;
}

VertexSet VertexSet::of(std::size_t universe, std::initializer_list<Vertex> vs) {
  VertexSet s(universe);
  for (Vertex v : vs) s.insert(v);
  return s;
}

VertexSet VertexSet::of(std::size_t universe, const std::vector<Vertex>& vs) {
  VertexSet s(universe);
  for (Vertex v : vs) s.insert(v);
  return s;
}

void VertexSet::insert(Vertex v) {
  if (v >= mask_.size()) throw ParameterError("VertexSet::insert: id out of range");
  if (!mask_[v]) {
    mask_[v] = 1;
    ++count_;
  }
}

void VertexSet::erase(Vertex v) {
  if (v >= mask_.size()) throw ParameterError("VertexSet::erase: id out of range");
  if (mask_[v]) {
    mask_[v] = 0;
    --count_;
  }
}

std::vector<Vertex> VertexSet::sorted() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for (std::size_t v = 0; v < mask_.size(); ++v)
    if (mask_[v]) out.push_back(static_cast<Vertex>(v));
  return out;
}

VertexSet VertexSet::complement() const {
  VertexSet out(mask_.size());
  for (std::size_t v = 0; v < mask_.size(); ++v)
    if (!mask_[v]) out.insert(static_cast<Vertex>(v));
  return out;
}

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw ParameterError("Graph: edge endpoint out of range");
    if (u == v) throw ParameterError("Graph: self-loop");
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 1; i <= n; ++i) g.offsets_[i] += g.offsets_[i - 1];
  g.adj_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : edges) {
    g.adj_[cursor[u]++] = v;
    g.adj_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto begin = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto end = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(begin, end);
    if (std::adjacent_find(begin, end) != end)
      throw ParameterError("Graph: duplicate edge");
  }
  g.m_ = edges.size();
  return g;
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (std::size_t u = 0; u < num_vertices(); ++u)
    for (Vertex v : neighbors(static_cast<Vertex>(u)))
      if (u < v) out.emplace_back(static_cast<Vertex>(u), v);
  return out;
}

namespace {

// Geometric skip over a run of length `count` of independent Bernoulli(p)
// trials; invokes hit(i) for each success index.
template <typename F>
void bernoulli_run(std::mt19937_64& eng, std::size_t count, double p, F&& hit) {
  if (p <= 0.0 || count == 0) return;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < count; ++i) hit(i);
    return;
  }
  const double log1mp = std::log1p(-p);
  std::size_t i = 0;
  while (true) {
    double u = next_unit(eng);
    // skip ~ Geometric(p): number of failures before the next success
    double skip = std::floor(std::log1p(-u) / log1mp);
    if (skip >= static_cast<double>(count - i)) return;
    i += static_cast<std::size_t>(skip);
    hit(i);
    if (++i >= count) return;
  }
}

}  // namespace

Graph gen_gnp(std::size_t n, double p, RngSeed seed) {
  if (p < 0.0 || p > 1.0) throw ParameterError("gen_gnp: p outside [0,1]");
  auto eng = seed.engine();
  std::vector<Edge> edges;
  if (p > 0.0 && n >= 2) {
    edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) *
                                           static_cast<double>(n - 1) / 2.0 * 1.1) + 16);
    for (std::size_t u = 0; u + 1 < n; ++u) {
      bernoulli_run(eng, n - u - 1, p, [&](std::size_t off) {
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + off));
      });
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_bipartite_gnp(std::size_t nl, std::size_t nr, double p, RngSeed seed) {
  if (p < 0.0 || p > 1.0) throw ParameterError("gen_bipartite_gnp: p outside [0,1]");
  auto eng = seed.engine();
  std::vector<Edge> edges;
  if (p > 0.0 && nl > 0 && nr > 0) {
    edges.reserve(static_cast<std::size_t>(p * static_cast<double>(nl) *
                                           static_cast<double>(nr) * 1.1) + 16);
    for (std::size_t u = 0; u < nl; ++u) {
      bernoulli_run(eng, nr, p, [&](std::size_t off) {
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(nl + off));
      });
    }
  }
  return Graph::from_edges(nl + nr, edges);
}

Graph induced_subgraph(const Graph& g, const VertexSet& vs) {
  if (vs.universe() > g.num_vertices())
    throw ParameterError("induced_subgraph: set universe exceeds graph size");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    if (!vs.contains(static_cast<Vertex>(u))) continue;
    for (Vertex v : g.neighbors(static_cast<Vertex>(u)))
      if (u < v && vs.contains(v)) edges.emplace_back(static_cast<Vertex>(u), v);
  }
  return Graph::from_edges(g.num_vertices(), edges);
}

std::size_t degree_to(const Graph& g, Vertex v, const VertexSet& s) {
  if (v >= g.num_vertices()) throw ParameterError("degree_to: vertex out of range");
  std::size_t d = 0;
  for (Vertex u : g.neighbors(v))
    if (s.contains(u)) ++d;
  return d;
}

bool is_vertex_cover(const Graph& g, const VertexSet& c) {
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    if (c.contains(static_cast<Vertex>(u))) continue;
    for (Vertex v : g.neighbors(static_cast<Vertex>(u)))
      if (!c.contains(v)) return false;
  }
  return true;
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw IoError("line 1: missing header \"n m\"");
  std::istringstream header(line);
  long long n = -1, m = -1;
  if (!(header >> n >> m) || n < 0 || m < 0)
    throw IoError("line " + std::to_string(lineno) + ": bad header \"" + line + "\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line())
      throw IoError("line " + std::to_string(lineno + 1) + ": expected " +
                    std::to_string(m) + " edges, got " + std::to_string(i));
    std::istringstream es(line);
    long long u = -1, v = -1;
    if (!(es >> u >> v) || u < 0 || v < 0 || u >= v || v >= n)
      throw IoError("line " + std::to_string(lineno) + ": bad edge \"" + line + "\"");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  try {
    return Graph::from_edges(static_cast<std::size_t>(n), edges);
  } catch (const ParameterError& e) {
    throw IoError(std::string("invalid edge list: ") + e.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edge_list()) out << u << ' ' << v << '\n';
}

}  // namespace mpcvc
