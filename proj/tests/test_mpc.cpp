#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mpcvc/errors.hpp"
#include "mpcvc/mpc_sim.hpp"

using namespace mpcvc;

namespace {

MpcConfig cfg_with(std::uint64_t seed, double c_scale = 2.0) {
  MpcConfig cfg;
  cfg.seed = RngSeed(seed);
  cfg.c_scale = c_scale;
  return cfg;
}

}  // namespace

TEST_CASE("parallel_peel empty graph") {
  Graph empty = Graph::from_edges(8, {});
  MpcTrace tr = parallel_peel(empty, cfg_with(1));
  CHECK(tr.final_cover.size() == 0);
  CHECK(tr.max_edges_any_machine == 0);
  CHECK(is_vertex_cover(empty, tr.final_cover.cover));
}

TEST_CASE("parallel_peel validity and round bound on gnp(4096)") {
  Graph g = gen_gnp(4096, 0.02, RngSeed(11));
  MpcTrace tr = parallel_peel(g, cfg_with(11));
  CHECK(is_vertex_cover(g, tr.final_cover.cover));
  CHECK(tr.total_rounds <=
        round_budget(4096, 4096, 2.0, FinalPhaseMode::single_machine));
  // tau <= ceil(log2 log2 4096) + 2 = 6
  CHECK(tr.schedule.tau() <= 6);
}

TEST_CASE("parallel_peel deterministic, including across thread counts") {
  Graph g = gen_gnp(1024, 0.03, RngSeed(5));
  MpcConfig a = cfg_with(7);
  MpcConfig b = cfg_with(7);
  b.threads = 4;
  MpcTrace ta = parallel_peel(g, a);
  MpcTrace tb = parallel_peel(g, b);
  CHECK(ta == tb);
  MpcConfig c = cfg_with(8);
  CHECK(parallel_peel(g, c) != ta);
}

TEST_CASE("phase peels are disjoint and reconstruct the cover") {
  Graph g = gen_gnp(2048, 0.01, RngSeed(3));
  MpcTrace tr = parallel_peel(g, cfg_with(3));
  VertexSet seen(g.num_vertices());
  for (const auto& ph : tr.phases) {
    for (Vertex v : ph.peeled) {
      CHECK_FALSE(seen.contains(v));
      seen.insert(v);
    }
    for (Vertex v : ph.cleanup_peeled) {
      CHECK_FALSE(seen.contains(v));
      seen.insert(v);
    }
  }
  for (Vertex v : tr.final_peeled) {
    CHECK_FALSE(seen.contains(v));
    seen.insert(v);
  }
  CHECK(seen == tr.final_cover.cover);
}

TEST_CASE("phase-degree invariant holds after every phase") {
  Graph g = gen_gnp(2048, 0.01, RngSeed(17));
  MpcTrace tr = parallel_peel(g, cfg_with(17));
  VertexSet alive = VertexSet::full(g.num_vertices());
  for (const auto& ph : tr.phases) {
    for (Vertex v : ph.peeled) alive.erase(v);
    for (Vertex v : ph.cleanup_peeled) alive.erase(v);
    CHECK(audit_phase_degree_invariant(g, alive, ph.delta_next));
  }
}

TEST_CASE("provenance labels every cover vertex") {
  Graph g = gen_gnp(512, 0.05, RngSeed(2));
  MpcTrace tr = parallel_peel(g, cfg_with(2));
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (tr.final_cover.cover.contains(v))
      CHECK(tr.final_cover.provenance[v].kind != Provenance::Kind::none);
    else
      CHECK(tr.final_cover.provenance[v].kind == Provenance::Kind::none);
  }
}

TEST_CASE("audit_phase_degree_invariant basics") {
  Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(audit_phase_degree_invariant(g, VertexSet(5), 0.0));
  CHECK(audit_phase_degree_invariant(g, VertexSet::full(5), 4.0));
  CHECK_FALSE(audit_phase_degree_invariant(g, VertexSet::full(5), 3.0));
}

TEST_CASE("audit_memory bands") {
  Graph g = gen_gnp(512, 0.03, RngSeed(21));
  MpcTrace tr = parallel_peel(g, cfg_with(21));
  CHECK(audit_memory(tr, 16.0));
  MpcTrace forged = tr;
  forged.max_edges_any_machine = 512ull * 512ull * 512ull;
  CHECK_FALSE(audit_memory(forged, 16.0));
}

TEST_CASE("final phase on a single edge and on P_4") {
  Graph e = Graph::from_edges(2, {{0, 1}});
  VertexSet cover =
      final_phase_single_machine(e, VertexSet::full(2), 2, 16.0, RngSeed(1));
  CHECK(cover == VertexSet::full(2));

  Graph p4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    VertexSet c =
        final_phase_single_machine(p4, VertexSet::full(4), 4, 16.0, RngSeed(seed));
    CHECK(is_vertex_cover(p4, c));
    CHECK(c.size() <= 4);  // 2 * opt
    CHECK(c.size() >= 2);
  }
}

TEST_CASE("final phase capacity error") {
  Graph g = gen_gnp(64, 0.2, RngSeed(1));
  MpcConfig cfg = cfg_with(1);
  cfg.c_audit = 1e-9;  // residual cannot fit any machine
  CHECK_THROWS_AS(parallel_peel(g, cfg), CapacityError);
}

TEST_CASE("iterated final phase on a star residual") {
  Graph star = Graph::from_edges(11, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5},
                                      {0, 6}, {0, 7}, {0, 8}, {0, 9}, {0, 10}});
  auto [cover, rounds] = final_phase_iterated(star, VertexSet::full(11), 16.0);
  CHECK(cover == VertexSet::of(11, {0}));
  // thresholds 8, 4, 2, 1: four iterations at 2 rounds each
  CHECK(rounds == 8);

  Graph none = Graph::from_edges(4, {});
  auto [c2, r2] = final_phase_iterated(none, VertexSet(4), 16.0);
  CHECK(c2.empty());
  CHECK(r2 == 0);
}

TEST_CASE("sublinear regime rounds and validity") {
  Graph g = gen_gnp(2048, 0.005, RngSeed(31));
  for (std::size_t s : {static_cast<std::size_t>(std::pow(2048.0, 0.75)),
                        static_cast<std::size_t>(std::sqrt(2048.0))}) {
    MpcConfig cfg = cfg_with(31);
    cfg.s = s;
    cfg.final_phase_mode = FinalPhaseMode::iterated_peeling;
    MpcTrace tr = parallel_peel(g, cfg);
    CHECK(is_vertex_cover(g, tr.final_cover.cover));
    CHECK(tr.schedule.sublinear);
    CHECK(tr.total_rounds <=
          round_budget(2048, s, 2.0, FinalPhaseMode::iterated_peeling));
  }
}

TEST_CASE("round budget formulas") {
  // linear: 3 * (ceil(log2 log2 n) + 2) + 2
  CHECK(round_budget(4096, 4096, 2.0, FinalPhaseMode::single_machine) ==
        3 * (4 + 2) + 2);
  CHECK(round_budget(65536, 65536, 4.0, FinalPhaseMode::single_machine) ==
        3 * (4 + 2) + 2);
  // sublinear adds 2 * ceil(log2(c * (n/s) * log2 n)) in iterated mode
  const std::size_t n = 4096, s = 64;
  const std::size_t iters = static_cast<std::size_t>(
      std::ceil(std::log2(2.0 * (static_cast<double>(n) / s) * 12.0)));
  CHECK(round_budget(n, s, 2.0, FinalPhaseMode::iterated_peeling) ==
        3 * (4 + 2) + 2 * iters);
}

TEST_CASE("machine loads are recorded and bounded by the trace maximum") {
  Graph g = gen_gnp(1024, 0.02, RngSeed(13));
  MpcTrace tr = parallel_peel(g, cfg_with(13));
  std::size_t max_seen = 0;
  for (const auto& ph : tr.phases) {
    CHECK(ph.machines.size() == ph.k);
    for (const auto& ml : ph.machines) {
      CHECK(ml.phase == ph.index);
      max_seen = std::max(max_seen, ml.edges_held);
    }
  }
  CHECK(max_seen == tr.max_edges_any_machine);
}

TEST_CASE("small graphs run degenerate schedules without incident") {
  for (std::size_t n : {2u, 3u, 5u, 9u}) {
    Graph g = gen_gnp(n, 0.5, RngSeed(n));
    MpcTrace tr = parallel_peel(g, cfg_with(n, 4.0));
    CHECK(is_vertex_cover(g, tr.final_cover.cover));
  }
}
