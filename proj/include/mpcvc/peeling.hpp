#pragma once

#include <cstdint>
#include <vector>

#include "mpcvc/graph.hpp"

namespace mpcvc {

// Degree thresholds Delta_1..Delta_tau plus the per-phase sampling
// probabilities and machine counts. Peeling phases run between consecutive
// thresholds, so there are tau-1 of them; the final threshold bounds the
// residual graph handed to the last step.
struct PhaseSchedule {
  std::size_t n = 0;
  std::size_t s = 0;
  double c_scale = 4.0;
  bool sublinear = false;            // s < n
  double floor_value = 0.0;          // c*log2(n), or c*(n/s)*log2(n) when sublinear
  std::vector<double> thresholds;    // Delta_1..Delta_tau (integral, ceil-rounded)
  std::vector<double> probabilities; // p_1..p_{tau-1}, clamped to <= 1
  std::vector<std::size_t> machine_counts;  // k_1..k_{tau-1}
  bool degenerate = false;           // tau == 1 or some p_i clamped to 1

  [[nodiscard]] std::size_t tau() const { return thresholds.size(); }
  [[nodiscard]] std::size_t num_phases() const { return probabilities.size(); }

  bool operator==(const PhaseSchedule&) const = default;
};

PhaseSchedule make_schedule(std::size_t n, std::size_t s, double c_scale = 4.0);

// Per-iteration peel record of one local peeling run.
struct PeelTrace {
  std::vector<std::vector<Vertex>> peeled_per_iteration;  // index t-1

  [[nodiscard]] std::size_t t_max() const { return peeled_per_iteration.size(); }
  [[nodiscard]] std::vector<Vertex> all_peeled() const;
};

struct Provenance {
  enum class Kind : std::uint8_t { none, machine, cleanup, final_phase, sequential };
  Kind kind = Kind::none;
  std::int32_t phase = -1;    // 1-based phase (or iteration, for sequential)
  std::int32_t machine = -1;  // valid for kind == machine

  bool operator==(const Provenance&) const = default;
};

struct CoverResult {
  VertexSet cover;
  std::vector<Provenance> provenance;  // indexed by vertex id

  [[nodiscard]] std::size_t size() const { return cover.size(); }
  bool operator==(const CoverResult&) const = default;
};

// Sequential halving peeler: thresholds n/2, n/4, ... down through 1,
// peeling every alive vertex whose current degree meets the threshold.
// Coverage of the result is asserted before returning.
CoverResult sequential_peel(const Graph& g, double c_scale = 4.0);

// One machine's peeling subroutine. Iterates t = 1..t_max with t_max the
// smallest integer such that delta/2^t_max <= c_scale*log2(n); at iteration t
// peels all alive vertices of degree >= delta/2^(t+1) within the alive set,
// simultaneously, then removes them.
PeelTrace local_peel(const Graph& g, const VertexSet& alive, double delta,
                     double c_scale);

}  // namespace mpcvc
