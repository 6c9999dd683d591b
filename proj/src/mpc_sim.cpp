#include "mpcvc/mpc_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mpcvc/errors.hpp"
#include "mpcvc/oracle.hpp"

namespace mpcvc {

namespace {

// Deterministic parallel loop: iteration i writes only slot i of the result
// vector, so the outcome is independent of thread count and scheduling.
template <typename F>
void parallel_for(int threads, std::size_t count, F&& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t t =
      std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += t) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct MachineResult {
  std::vector<Vertex> sampled_alive;
  std::vector<Vertex> peeled;
  std::size_t edges_held = 0;
};

MachineResult run_machine(const Graph& g, const VertexSet& alive, double p,
                          double local_delta, double c_scale, RngSeed seed) {
  const std::size_t n = g.num_vertices();
  MachineResult res;

  // V^(j): sample from all of V(G), then intersect with the alive set.
  auto eng = seed.engine();
  VertexSet sampled(n);
  if (p >= 1.0) {
    res.sampled_alive = alive.sorted();
    for (Vertex v : res.sampled_alive) sampled.insert(v);
  } else if (p > 0.0) {
    const double log1mp = std::log1p(-p);
    std::size_t v = 0;
    while (v < n) {
      double u = next_unit(eng);
      double skip = std::floor(std::log1p(-u) / log1mp);
      if (skip >= static_cast<double>(n - v)) break;
      v += static_cast<std::size_t>(skip);
      if (alive.contains(static_cast<Vertex>(v))) {
        sampled.insert(static_cast<Vertex>(v));
        res.sampled_alive.push_back(static_cast<Vertex>(v));
      }
      ++v;
    }
  }

  std::size_t deg_sum = 0;
  for (Vertex v : res.sampled_alive) {
    for (Vertex u : g.neighbors(v))
      if (sampled.contains(u)) ++deg_sum;
  }
  res.edges_held = deg_sum / 2;

  PeelTrace pt = local_peel(g, sampled, local_delta, c_scale);
  res.peeled = pt.all_peeled();
  return res;
}

std::vector<std::size_t> degrees_within(const Graph& g, const VertexSet& alive) {
  std::vector<std::size_t> deg(g.num_vertices(), 0);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!alive.contains(static_cast<Vertex>(v))) continue;
    deg[v] = degree_to(g, static_cast<Vertex>(v), alive);
  }
  return deg;
}

std::size_t count_residual_edges(const Graph& g, const VertexSet& alive) {
  std::size_t deg_sum = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (alive.contains(static_cast<Vertex>(v)))
      deg_sum += degree_to(g, static_cast<Vertex>(v), alive);
  return deg_sum / 2;
}

}  // namespace

MpcTrace parallel_peel(const Graph& g, const MpcConfig& cfg) {
  const std::size_t n = g.num_vertices();
  MpcTrace trace;
  trace.seed = cfg.seed.seed;
  trace.final_mode = cfg.final_phase_mode;
  trace.final_cover = CoverResult{VertexSet(n), std::vector<Provenance>(n)};
  if (n < 2) return trace;

  const std::size_t s_eff = cfg.s == 0 ? n : std::min(cfg.s, n);
  trace.schedule = make_schedule(n, s_eff, cfg.c_scale);
  const PhaseSchedule& sched = trace.schedule;

  VertexSet alive = VertexSet::full(n);
  CoverResult& cover = trace.final_cover;

  for (std::size_t pi = 0; pi < sched.num_phases(); ++pi) {
    MpcPhaseRecord rec;
    rec.index = pi + 1;
    rec.delta = sched.thresholds[pi];
    rec.delta_next = sched.thresholds[pi + 1];
    rec.p = sched.probabilities[pi];
    rec.k = sched.machine_counts[pi];
    const double local_delta = rec.p * rec.delta;

    std::vector<MachineResult> results(rec.k);
    parallel_for(cfg.threads, rec.k, [&](std::size_t j) {
      results[j] = run_machine(g, alive, rec.p, local_delta, cfg.c_scale,
                               cfg.seed.derive(0xA11CE, rec.index, j + 1));
    });

    VertexSet phase_peeled(n);
    VertexSet covered_by_sample(n);
    const std::size_t alive_before = alive.size();
    rec.machines.reserve(rec.k);
    for (std::size_t j = 0; j < rec.k; ++j) {
      const MachineResult& mr = results[j];
      rec.machines.push_back({rec.index, j + 1, mr.sampled_alive.size(),
                              mr.edges_held, 3});
      trace.max_edges_any_machine =
          std::max(trace.max_edges_any_machine, mr.edges_held);
      for (Vertex v : mr.sampled_alive) covered_by_sample.insert(v);
      for (Vertex v : mr.peeled) {
        if (!phase_peeled.contains(v)) {
          phase_peeled.insert(v);
          cover.provenance[v] = {Provenance::Kind::machine,
                                 static_cast<std::int32_t>(rec.index),
                                 static_cast<std::int32_t>(j + 1)};
        }
      }
    }
    rec.sample_coverage =
        alive_before == 0 ? 1.0
                          : static_cast<double>(covered_by_sample.size()) /
                                static_cast<double>(alive_before);
    rec.peeled = phase_peeled.sorted();
    for (Vertex v : rec.peeled) {
      alive.erase(v);
      cover.cover.insert(v);
    }

    // Sweep out everything above the next threshold. One simultaneous sweep
    // suffices since removals only lower degrees; the audit guards the claim.
    auto deg = degrees_within(g, alive);
    for (std::size_t v = 0; v < n; ++v) {
      if (alive.contains(static_cast<Vertex>(v)) &&
          static_cast<double>(deg[v]) > rec.delta_next)
        rec.cleanup_peeled.push_back(static_cast<Vertex>(v));
    }
    for (Vertex v : rec.cleanup_peeled) {
      alive.erase(v);
      cover.cover.insert(v);
      cover.provenance[v] = {Provenance::Kind::cleanup,
                             static_cast<std::int32_t>(rec.index), -1};
    }
    while (!audit_phase_degree_invariant(g, alive, rec.delta_next)) {
      rec.second_cleanup_sweep = true;
      auto deg2 = degrees_within(g, alive);
      for (std::size_t v = 0; v < n; ++v) {
        if (alive.contains(static_cast<Vertex>(v)) &&
            static_cast<double>(deg2[v]) > rec.delta_next) {
          rec.cleanup_peeled.push_back(static_cast<Vertex>(v));
          alive.erase(static_cast<Vertex>(v));
          cover.cover.insert(static_cast<Vertex>(v));
          cover.provenance[v] = {Provenance::Kind::cleanup,
                                 static_cast<std::int32_t>(rec.index), -1};
        }
      }
    }

    trace.total_rounds += 3;
    trace.phases.push_back(std::move(rec));
  }

  VertexSet final_cover_set(n);
  if (cfg.final_phase_mode == FinalPhaseMode::single_machine) {
    final_cover_set = final_phase_single_machine(g, alive, s_eff, cfg.c_audit,
                                                 cfg.seed.derive(0xF17A1));
    trace.final_rounds = 2;
  } else {
    auto [set, rounds] =
        final_phase_iterated(g, alive, sched.thresholds.back());
    final_cover_set = std::move(set);
    trace.final_rounds = rounds;
  }
  trace.final_peeled = final_cover_set.sorted();
  for (Vertex v : trace.final_peeled) {
    cover.cover.insert(v);
    cover.provenance[v] = {Provenance::Kind::final_phase,
                           static_cast<std::int32_t>(sched.tau()), -1};
  }
  trace.total_rounds += trace.final_rounds;

  if (!is_vertex_cover(g, cover.cover))
    throw std::logic_error("parallel_peel: output is not a vertex cover");
  return trace;
}

VertexSet final_phase_single_machine(const Graph& g, const VertexSet& alive,
                                     std::size_t s, double c_audit,
                                     RngSeed seed) {
  const std::size_t n = g.num_vertices();
  const double log2n = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  const std::size_t residual_edges = count_residual_edges(g, alive);
  const double budget = c_audit * static_cast<double>(s) * log2n * log2n;
  if (static_cast<double>(residual_edges + alive.size()) > budget)
    throw CapacityError("final phase residual (" +
                        std::to_string(residual_edges + alive.size()) +
                        " words) exceeds single-machine budget (" +
                        std::to_string(budget) + ")");
  auto matching = greedy_maximal_matching(g, alive, seed);
  VertexSet out(n);
  for (auto [u, v] : matching) {
    out.insert(u);
    out.insert(v);
  }
  return out;
}

std::pair<VertexSet, std::size_t> final_phase_iterated(const Graph& g,
                                                       const VertexSet& alive,
                                                       double delta_tau) {
  const std::size_t n = g.num_vertices();
  VertexSet out(n);
  std::size_t rounds = 0;
  if (alive.empty() || delta_tau <= 0.0) return {out, rounds};

  VertexSet live = alive;
  auto deg = degrees_within(g, live);
  std::vector<Vertex> peel;
  double th = delta_tau / 2.0;
  while (true) {
    peel.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (live.contains(static_cast<Vertex>(v)) &&
          static_cast<double>(deg[v]) >= th)
        peel.push_back(static_cast<Vertex>(v));
    for (Vertex v : peel) live.erase(v);
    for (Vertex v : peel)
      for (Vertex u : g.neighbors(v))
        if (live.contains(u)) --deg[u];
    for (Vertex v : peel) out.insert(v);
    rounds += 2;
    if (th <= 1.0) break;
    th /= 2.0;
  }
  return {out, rounds};
}

bool audit_memory(const MpcTrace& trace, double c_audit) {
  const std::size_t n = trace.schedule.n;
  if (n < 2) return trace.max_edges_any_machine == 0;
  const double log2n = std::log2(static_cast<double>(n));
  const double bound =
      c_audit * static_cast<double>(trace.schedule.s) * log2n * log2n;
  return static_cast<double>(trace.max_edges_any_machine) <= bound;
}

bool audit_phase_degree_invariant(const Graph& g, const VertexSet& alive,
                                  double delta_next) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!alive.contains(static_cast<Vertex>(v))) continue;
    if (static_cast<double>(degree_to(g, static_cast<Vertex>(v), alive)) >
        delta_next)
      return false;
  }
  return true;
}

std::size_t round_budget(std::size_t n, std::size_t s, double c_scale,
                         FinalPhaseMode mode) {
  if (n < 2) return 0;
  const double log2n = std::log2(static_cast<double>(n));
  const double phases =
      std::ceil(std::log2(std::max(log2n, 1.0))) + 2.0;
  std::size_t budget = 3 * static_cast<std::size_t>(phases);
  if (mode == FinalPhaseMode::single_machine) {
    budget += 2;
  } else {
    const double delta_tau =
        c_scale * (static_cast<double>(n) / static_cast<double>(s)) * log2n;
    const double iters = std::max(1.0, std::ceil(std::log2(std::max(delta_tau, 2.0))));
    budget += 2 * static_cast<std::size_t>(iters);
  }
  return budget;
}

}  // namespace mpcvc
