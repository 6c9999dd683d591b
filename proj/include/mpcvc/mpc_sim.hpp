#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mpcvc/graph.hpp"
#include "mpcvc/peeling.hpp"

namespace mpcvc {

enum class FinalPhaseMode : std::uint8_t { single_machine, iterated_peeling };

struct MpcConfig {
  std::size_t s = 0;  // memory per machine, in vertices+edges; 0 means s = n
  double c_scale = 4.0;
  double c_audit = 16.0;
  RngSeed seed;
  FinalPhaseMode final_phase_mode = FinalPhaseMode::single_machine;
  int threads = 1;
};

struct MachineLoad {
  std::size_t phase = 0;    // 1-based
  std::size_t machine = 0;  // 1-based
  std::size_t vertices_held = 0;
  std::size_t edges_held = 0;
  std::size_t rounds_used = 0;

  bool operator==(const MachineLoad&) const = default;
};

struct MpcPhaseRecord {
  std::size_t index = 0;  // 1-based phase i
  double delta = 0.0;
  double delta_next = 0.0;
  double p = 0.0;
  std::size_t k = 0;
  std::vector<MachineLoad> machines;
  std::vector<Vertex> peeled;          // union of the machines' peels, sorted
  std::vector<Vertex> cleanup_peeled;  // degree > delta_next removals, sorted
  double sample_coverage = 1.0;  // fraction of alive vertices in some sampled set
  bool second_cleanup_sweep = false;

  bool operator==(const MpcPhaseRecord&) const = default;
};

struct MpcTrace {
  PhaseSchedule schedule;
  std::uint64_t seed = 0;
  FinalPhaseMode final_mode = FinalPhaseMode::single_machine;
  std::vector<MpcPhaseRecord> phases;
  std::vector<Vertex> final_peeled;  // sorted
  std::size_t final_rounds = 0;
  std::size_t total_rounds = 0;
  std::size_t max_edges_any_machine = 0;
  CoverResult final_cover;

  bool operator==(const MpcTrace&) const = default;
};

// Full Parallel-Peeling run: per phase, sample k_i vertex sets, run local
// peeling on each induced subgraph, union the peels, then sweep out vertices
// of degree above the next threshold. Deterministic under cfg.seed, including
// across thread counts.
MpcTrace parallel_peel(const Graph& g, const MpcConfig& cfg);

// Final step, linear regime: endpoints of a greedy maximal matching on the
// residual graph (a 2-approximate cover). Throws CapacityError if the
// residual does not fit the machine budget.
VertexSet final_phase_single_machine(const Graph& g, const VertexSet& alive,
                                     std::size_t s, double c_audit, RngSeed seed);

// Final step, sublinear regime: run the sequential thresholds from delta_tau
// down through 1, charging a fixed 2 MPC rounds per iteration. Returns the
// cover of the residual plus the rounds consumed.
std::pair<VertexSet, std::size_t> final_phase_iterated(const Graph& g,
                                                       const VertexSet& alive,
                                                       double delta_tau);

// Max edges held by any machine vs the c_audit * s * log2(n)^2 band.
bool audit_memory(const MpcTrace& trace, double c_audit);

// True iff every alive vertex has degree <= delta_next within the alive set.
bool audit_phase_degree_invariant(const Graph& g, const VertexSet& alive,
                                  double delta_next);

// Round budget the simulator is held to: 3 rounds per peeling phase plus the
// final phase charge (2 rounds flat, or 2 per iterated-peeling iteration).
std::size_t round_budget(std::size_t n, std::size_t s, double c_scale,
                         FinalPhaseMode mode);

}  // namespace mpcvc
