#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mpcvc/graph.hpp"

namespace mpcvc {

struct BallsBinsResult {
  std::size_t balls = 0;  // N
  std::size_t bins = 0;   // M
  std::size_t subset_size = 0;         // |B|
  std::size_t singleton_count_in_b = 0;  // bins of B holding exactly one ball
};

// N balls into M > N uniform bins; counts single-occupancy bins inside B.
BallsBinsResult throw_balls(std::size_t n_balls, std::size_t n_bins,
                            const VertexSet& b, RngSeed seed);

struct InducedMatchingResult {
  VertexSet s;        // left vertices of degree exactly 1
  VertexSet t;        // right vertices with no edge to L \ S
  VertexSet t_prime;  // members of T with exactly one S-edge
  VertexSet s_prime;  // their unique S-partners
  std::vector<Edge> matching;  // S'-T' pairs, sorted by left endpoint
};

// Induced-matching construction on a bipartite graph with left side [0, n_left).
// The induced property of the returned matching is verified exhaustively
// before returning.
InducedMatchingResult extract_induced_matching(const Graph& g,
                                               std::size_t n_left);

// True iff matched edges are pairwise vertex-disjoint and the graph has no
// edge joining two different matched pairs (induced w.r.t. the whole graph).
bool verify_induced_matching(const Graph& g, const std::vector<Edge>& matching);

// min(1, 2*exp(-2 t^2 / n)) for sums of n independent [0,1] variables.
double chernoff_bound(std::size_t n, double t);

// min(1, 2*exp(-2 t^2 / (n d^2))) for d-Lipschitz functions of n independents.
double bounded_differences_bound(std::size_t n, double d, double t);

// Frequency of |sample - mean| > t over `trials` runs of the sampler. When no
// closed-form mean is supplied it is estimated from a separate trial block
// (same size) so the tail estimate is not computed against its own data.
double empirical_tail(const std::function<double(RngSeed)>& sampler,
                      std::size_t trials, double t, RngSeed seed,
                      std::optional<double> mean = std::nullopt);

}  // namespace mpcvc
