#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mpcvc/graph.hpp"
#include "mpcvc/mpc_sim.hpp"
#include "mpcvc/peeling.hpp"

namespace mpcvc {

// Exact minimum vertex cover via branch-and-bound (branch on the highest
// degree vertex: take it, or take its whole neighborhood; maximal matching
// size prunes). Refuses graphs above max_vertices rather than approximating.
VertexSet exact_min_vc(const Graph& g, std::size_t max_vertices = 60);

// Maximal matching over the alive-induced subgraph; edge scan order is a
// seed-derived shuffle. Matching size lower-bounds opt; the endpoint set is a
// 2-approximate cover.
std::vector<Edge> greedy_maximal_matching(const Graph& g, const VertexSet& alive,
                                          RngSeed seed);

// Endpoints of a maximal matching, as a cover.
VertexSet matching_cover(const Graph& g, const VertexSet& alive, RngSeed seed);

// Analysis-only peeling record for a fixed cover O*: the process peels
// O*-side vertices at thresholds delta_i/2^t and the complement side at
// delta_i/2^(t+2), on the bipartite graph left after dropping O*-internal
// edges.
struct HypotheticalTrace {
  PhaseSchedule schedule;
  VertexSet opt_cover;  // O*
  struct Phase {
    std::vector<std::vector<Vertex>> o_peels;     // O_{i,t}, sorted
    std::vector<std::vector<Vertex>> obar_peels;  // Obar_{i,t}, sorted
    std::vector<Vertex> o_union;
    std::vector<Vertex> obar_union;

    bool operator==(const Phase&) const = default;
  };
  std::vector<Phase> phases;

  [[nodiscard]] std::size_t total_iterations() const;
  [[nodiscard]] std::vector<Vertex> all_peeled() const;

  bool operator==(const HypotheticalTrace&) const = default;
};

// Runs the hypothetical process verbatim; deterministic. opt_cover must be a
// valid vertex cover of g (any valid cover is accepted; minimality only
// affects the interpretation of the size bound).
HypotheticalTrace hypothetical_process(const Graph& g, const VertexSet& opt_cover,
                                       const PhaseSchedule& sched);

// |union of all peels| <= (8 * total iterations + 1) * opt_size. This bound
// is deterministic counting, not a probabilistic event.
bool hypothetical_size_bound(const HypotheticalTrace& trace,
                             std::size_t opt_size);

struct SandwichReport {
  struct PhaseVerdict {
    std::size_t phase = 0;  // 1-based
    bool a_superset_o = true;
    bool b_subset_obar = true;
  };
  struct Violation {
    std::size_t phase = 0;
    char side = 'A';  // 'A' or 'B'
    Vertex witness = 0;
  };
  std::vector<PhaseVerdict> phases;
  std::optional<Violation> violation;

  [[nodiscard]] bool all_hold() const { return !violation.has_value(); }
};

// Prefix-inclusion check of the parallel peels against the hypothetical
// process: union A_{i'} must contain union O_{i'}, union B_{i'} must stay
// inside union Obar_{i'}, per phase prefix.
SandwichReport sandwich_audit(const MpcTrace& mpc, const HypotheticalTrace& hyp);

}  // namespace mpcvc
