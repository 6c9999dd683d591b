#include "mpcvc/random_structures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpcvc/errors.hpp"

namespace mpcvc {

BallsBinsResult throw_balls(std::size_t n_balls, std::size_t n_bins,
                            const VertexSet& b, RngSeed seed) {
  if (n_balls < 1 || n_bins <= n_balls)
    throw ParameterError("throw_balls: requires M > N >= 1");
  if (b.universe() > n_bins)
    throw ParameterError("throw_balls: B exceeds the bin range");

  std::vector<std::uint32_t> occupancy(n_bins, 0);
  auto eng = seed.engine();
  for (std::size_t i = 0; i < n_balls; ++i)
    ++occupancy[next_below(eng, n_bins)];

  BallsBinsResult res{n_balls, n_bins, b.size(), 0};
  for (std::size_t bin = 0; bin < n_bins; ++bin)
    if (occupancy[bin] == 1 && b.contains(static_cast<Vertex>(bin)))
      ++res.singleton_count_in_b;
  return res;
}

InducedMatchingResult extract_induced_matching(const Graph& g,
                                               std::size_t n_left) {
  const std::size_t n = g.num_vertices();
  if (n_left > n)
    throw ParameterError("extract_induced_matching: n_left exceeds graph size");

  InducedMatchingResult res;
  res.s = VertexSet(n);
  res.t = VertexSet(n);
  res.t_prime = VertexSet(n);
  res.s_prime = VertexSet(n);

  for (std::size_t v = 0; v < n_left; ++v)
    if (g.degree(static_cast<Vertex>(v)) == 1)
      res.s.insert(static_cast<Vertex>(v));

  for (std::size_t v = n_left; v < n; ++v) {
    bool clean = true;
    for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
      if (!res.s.contains(u)) {
        clean = false;
        break;
      }
    }
    if (clean) res.t.insert(static_cast<Vertex>(v));
  }

  // T members see only S; one with exactly one edge pairs with its unique
  // S-partner, and that partner has no other edge at all.
  for (Vertex v : res.t.sorted()) {
    if (g.degree(v) != 1) continue;
    const Vertex partner = g.neighbors(v)[0];
    res.t_prime.insert(v);
    res.s_prime.insert(partner);
    res.matching.emplace_back(partner, v);
  }
  std::sort(res.matching.begin(), res.matching.end());

  if (!verify_induced_matching(g, res.matching))
    throw std::logic_error(
        "extract_induced_matching: construction produced a non-induced matching");
  return res;
}

bool verify_induced_matching(const Graph& g, const std::vector<Edge>& matching) {
  std::vector<std::int32_t> pair_of(g.num_vertices(), -1);
  for (std::size_t i = 0; i < matching.size(); ++i) {
    auto [u, v] = matching[i];
    if (pair_of[u] != -1 || pair_of[v] != -1) return false;  // shared endpoint
    pair_of[u] = static_cast<std::int32_t>(i);
    pair_of[v] = static_cast<std::int32_t>(i);
  }
  for (auto [u, v] : matching) {
    for (Vertex w : g.neighbors(u))
      if (pair_of[w] != -1 && pair_of[w] != pair_of[u]) return false;
    for (Vertex w : g.neighbors(v))
      if (pair_of[w] != -1 && pair_of[w] != pair_of[v]) return false;
  }
  return true;
}

double chernoff_bound(std::size_t n, double t) {
  if (n < 1) throw ParameterError("chernoff_bound: n < 1");
  if (t < 0.0) throw ParameterError("chernoff_bound: t < 0");
  return std::min(1.0, 2.0 * std::exp(-2.0 * t * t / static_cast<double>(n)));
}

double bounded_differences_bound(std::size_t n, double d, double t) {
  if (n < 1) throw ParameterError("bounded_differences_bound: n < 1");
  if (d <= 0.0) throw ParameterError("bounded_differences_bound: d <= 0");
  if (t < 0.0) throw ParameterError("bounded_differences_bound: t < 0");
  return std::min(1.0,
                  2.0 * std::exp(-2.0 * t * t / (static_cast<double>(n) * d * d)));
}

double empirical_tail(const std::function<double(RngSeed)>& sampler,
                      std::size_t trials, double t, RngSeed seed,
                      std::optional<double> mean) {
  if (trials < 1) throw ParameterError("empirical_tail: trials < 1");
  double center;
  if (mean) {
    center = *mean;
  } else {
    double sum = 0.0;
    for (std::size_t i = 0; i < trials; ++i)
      sum += sampler(seed.derive(0xE5717A7E, i));
    center = sum / static_cast<double>(trials);
  }
  std::size_t exceed = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double x = sampler(seed.derive(0x7A11, i));
    if (std::abs(x - center) > t) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(trials);
}

}  // namespace mpcvc
