// Acceptance gate: one check per release criterion, one PASS/FAIL line each,
// nonzero exit if anything fails. Tolerances are pinned here on purpose —
// loosening them is a release decision, not a refactor.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mpcvc/experiment.hpp"
#include "mpcvc/mpc_sim.hpp"
#include "mpcvc/oracle.hpp"
#include "mpcvc/peeling.hpp"
#include "mpcvc/random_structures.hpp"

using namespace mpcvc;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  if (!pass) ++failures;
}

MpcConfig mpc_cfg(std::uint64_t seed, double c_scale) {
  MpcConfig cfg;
  cfg.seed = RngSeed(seed);
  cfg.c_scale = c_scale;
  return cfg;
}

// criterion 1: cover validity on 1000 generated graphs, both algorithms
void criterion_cover_validity() {
  const std::size_t sizes[] = {16, 32, 64, 128, 256, 512, 1024, 2048};
  const double densities[] = {0.5, 0.2, 0.05, 0.02, 0.01};
  std::size_t runs = 0, valid = 0;
  std::uint64_t seed = 0;
  while (runs < 1000) {
    for (std::size_t n : sizes) {
      for (double d : densities) {
        if (runs >= 1000) break;
        const double p = std::min(1.0, d * 64.0 / static_cast<double>(n) +
                                           d * 0.05);
        Graph g = gen_gnp(n, p, RngSeed(seed));
        const bool ok_seq = is_vertex_cover(g, sequential_peel(g).cover);
        const bool ok_par =
            is_vertex_cover(g, parallel_peel(g, mpc_cfg(seed, 2.0)).final_cover.cover);
        ++runs;
        if (ok_seq && ok_par) ++valid;
        ++seed;
      }
    }
  }
  report(1, "cover validity, sequential + parallel", valid == runs,
         std::to_string(valid) + "/" + std::to_string(runs) + " valid");
}

std::size_t brute_min_vc(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto edges = g.edge_list();
  std::size_t best = n;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    bool covers = true;
    for (auto [u, v] : edges)
      if (!((mask >> u) & 1) && !((mask >> v) & 1)) {
        covers = false;
        break;
      }
    if (covers)
      best = std::min<std::size_t>(best,
                                   static_cast<std::size_t>(std::popcount(mask)));
  }
  return best;
}

// criterion 2: approximation ratios against exact opt at n <= 40
void criterion_approx_ratio() {
  std::size_t runs = 0, seq_ok = 0, par_ok = 0, par_hard_ok = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 20 + seed % 21;  // 20..40
    const double p = 0.08 + 0.02 * static_cast<double>(seed % 12);
    Graph g = gen_gnp(n, p, RngSeed(seed ^ 0xA55A));
    const auto opt = static_cast<double>(exact_min_vc(g).size());
    const double log2n = std::log2(static_cast<double>(n));
    const auto seq = static_cast<double>(sequential_peel(g).size());
    const auto par = static_cast<double>(
        parallel_peel(g, mpc_cfg(seed, 2.0)).final_cover.size());
    ++runs;
    const double seq_ratio = opt == 0.0 ? 1.0 : seq / opt;
    const double par_ratio = opt == 0.0 ? 1.0 : par / opt;
    if (seq_ratio <= 2.0 * log2n) ++seq_ok;
    if (par_ratio <= 4.0 * log2n) ++par_ok;
    if (par_ratio <= 8.0 * log2n) ++par_hard_ok;
  }
  const bool pass = seq_ok == runs && par_ok >= (runs * 95) / 100 &&
                    par_hard_ok == runs;
  report(2, "approximation ratio vs exact opt", pass,
         "seq<=2log n: " + std::to_string(seq_ok) + "/200, par<=4log n: " +
             std::to_string(par_ok) + "/200, par<=8log n: " +
             std::to_string(par_hard_ok) + "/200");
}

// criterion 3: deterministic counting bound of the analysis process
void criterion_hypothetical_bound() {
  std::size_t runs = 0, bound_ok = 0, per_iter_ok = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const std::size_t n = 24 + seed % 17;  // 24..40
    Graph g = gen_gnp(n, 0.1 + 0.05 * static_cast<double>(seed % 5),
                      RngSeed(seed ^ 0xBEEF));
    VertexSet cover = (seed % 2 == 0)
                          ? exact_min_vc(g)
                          : matching_cover(g, VertexSet::full(n), RngSeed(seed));
    PhaseSchedule sched = make_schedule(n, n, 2.0);
    HypotheticalTrace tr = hypothetical_process(g, cover, sched);
    ++runs;
    if (hypothetical_size_bound(tr, cover.size())) ++bound_ok;
    bool per_iter = true;
    for (const auto& ph : tr.phases)
      for (const auto& batch : ph.obar_peels)
        per_iter = per_iter && batch.size() <= 8 * cover.size();
    if (per_iter) ++per_iter_ok;
  }
  report(3, "hypothetical-process size bounds (deterministic)",
         bound_ok == runs && per_iter_ok == runs,
         "union bound " + std::to_string(bound_ok) + "/500, per-iteration " +
             std::to_string(per_iter_ok) + "/500");
}

// criteria 4 + 5: memory band and round budgets on the same 100-run sweep
void criterion_memory_and_rounds() {
  const std::size_t n = 4096;
  std::size_t memory_ok = 0, rounds_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph g = gen_gnp(n, 0.02, RngSeed(seed ^ 0x4A4A));
    MpcTrace tr = parallel_peel(g, mpc_cfg(seed, 2.0));
    const double log2n = std::log2(static_cast<double>(n));
    if (static_cast<double>(tr.max_edges_any_machine) <=
        16.0 * static_cast<double>(n) * log2n * log2n)
      ++memory_ok;
    if (tr.total_rounds <=
        round_budget(n, n, 2.0, FinalPhaseMode::single_machine))
      ++rounds_ok;
  }
  report(4, "per-machine memory band (16 n log^2 n)", memory_ok >= 99,
         std::to_string(memory_ok) + "/100 within band");

  bool sublinear_ok = true;
  std::string sub_detail;
  for (double expo : {0.75, 0.5}) {
    const auto s = static_cast<std::size_t>(
        std::pow(static_cast<double>(n), expo));
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Graph g = gen_gnp(n, 0.02, RngSeed(seed ^ 0x5B5B));
      MpcConfig cfg = mpc_cfg(seed, 2.0);
      cfg.s = s;
      cfg.final_phase_mode = FinalPhaseMode::iterated_peeling;
      MpcTrace tr = parallel_peel(g, cfg);
      if (tr.total_rounds <=
          round_budget(n, s, 2.0, FinalPhaseMode::iterated_peeling))
        ++ok;
    }
    sublinear_ok = sublinear_ok && ok == 20;
    sub_detail += " s=" + std::to_string(s) + ": " + std::to_string(ok) + "/20";
  }
  report(5, "round budgets, linear and sublinear",
         rounds_ok == 100 && sublinear_ok,
         "linear " + std::to_string(rounds_ok) + "/100, sublinear" + sub_detail);
}

// criterion 6: prefix inclusions vs the analysis process, rate-checked
void criterion_sandwich() {
  std::size_t held = 0;
  const std::size_t runs = 100;
  for (std::uint64_t seed = 0; seed < runs; ++seed) {
    Graph g = gen_gnp(2048, 0.01, RngSeed(seed ^ 0x6C6C));
    MpcTrace tr = parallel_peel(g, mpc_cfg(seed, 2.0));
    VertexSet o_star = matching_cover(g, VertexSet::full(2048), RngSeed(seed + 1));
    HypotheticalTrace hyp = hypothetical_process(g, o_star, tr.schedule);
    if (sandwich_audit(tr, hyp).all_hold()) ++held;
  }
  report(6, "sandwich prefix inclusions (>=90% rate, >=50% hard floor)",
         held >= 90 && held >= 50,
         std::to_string(held) + "/" + std::to_string(runs) + " held");
}

// criterion 7: induced matching extraction at full scale
void criterion_induced_matching() {
  const std::size_t n = 10000;
  const double nd = static_cast<double>(n);
  const double dev = 4.0 * std::sqrt(nd * std::log(nd));
  std::size_t verified = 0, size_ok = 0, s_band_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph g = gen_bipartite_gnp(n, n, 1.0 / nd, RngSeed(seed ^ 0x7D7D));
    InducedMatchingResult r = extract_induced_matching(g, n);
    if (verify_induced_matching(g, r.matching)) ++verified;
    if (static_cast<double>(r.matching.size()) >= 0.8 * nd / std::exp(3.0))
      ++size_ok;
    const double s_size = static_cast<double>(r.s.size());
    if (std::abs(s_size - nd / std::exp(1.0)) <= dev) ++s_band_ok;
  }
  report(7, "induced matching size and degree-1 band",
         verified == 100 && size_ok >= 95 && s_band_ok >= 95,
         "verified " + std::to_string(verified) + "/100, size " +
             std::to_string(size_ok) + "/100, |S| band " +
             std::to_string(s_band_ok) + "/100");
}

// criterion 8: concentration validators at 3+3 parameter points
void criterion_concentration() {
  ExperimentConfig cfg;
  cfg.command = Command::appendix_concentration;
  cfg.seed_lo = cfg.seed_hi = 2026;
  RunReport rep = run_experiment(cfg);
  std::size_t points = 0, pass_points = 0;
  for (const auto& row : rep.doc.at("rows")) {
    ++points;
    if (row.at("pass") == 1) ++pass_points;
  }
  report(8, "empirical tails within analytical bounds",
         points >= 6 && pass_points == points,
         std::to_string(pass_points) + "/" + std::to_string(points) + " points");
}

// criterion 9: exact oracle vs exhaustive search + fixtures
void criterion_oracle_equivalence() {
  std::size_t agree = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 6 + seed % 9;  // 6..14
    Graph g = gen_gnp(n, 0.1 + 0.05 * static_cast<double>(seed % 7),
                      RngSeed(seed ^ 0x9E9E));
    if (exact_min_vc(g).size() == brute_min_vc(g)) ++agree;
  }
  Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Graph c5 = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  Graph pet = Graph::from_edges(
      10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 5}, {1, 6}, {2, 7},
           {3, 8}, {4, 9}, {5, 7}, {5, 8}, {6, 8}, {6, 9}, {7, 9}});
  std::vector<Edge> k5e;
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = u + 1; v < 5; ++v) k5e.push_back({u, v});
  Graph k5 = Graph::from_edges(5, k5e);
  const bool fixtures = exact_min_vc(c4).size() == 2 &&
                        exact_min_vc(c5).size() == 3 &&
                        exact_min_vc(pet).size() == 6 &&
                        exact_min_vc(k5).size() == 4;
  report(9, "exact oracle vs exhaustive search", agree == 200 && fixtures,
         std::to_string(agree) + "/200 random + fixtures " +
             (fixtures ? "ok" : "MISMATCH"));
}

// criterion 10: byte-identical reports per command, across thread counts
void criterion_determinism() {
  struct Case {
    Command cmd;
    std::string gen;
    std::uint64_t seed_hi_extra = 0;
  };
  const Case cases[] = {
      {Command::run_parallel, "gnp:512:0.02"},
      {Command::run_sequential, "gnp:512:0.02"},
      {Command::compare, "gnp:40:0.2"},
      {Command::sandwich, "gnp:512:0.02", 7},
      {Command::memory_sweep, "gnp:512:0.02", 7},
      {Command::appendix_matching, "bip:2000:2000:0.0005", 4},
      {Command::appendix_concentration, ""},
  };
  std::size_t identical = 0, total = 0;
  std::string first_diff;
  for (const auto& c : cases) {
    ExperimentConfig cfg;
    cfg.command = c.cmd;
    cfg.gen_spec = c.gen;
    cfg.c_scale = 2.0;
    cfg.seed_lo = 17;
    cfg.seed_hi = 17 + c.seed_hi_extra;
    RunReport a = run_experiment(cfg);
    ExperimentConfig threaded = cfg;
    threaded.threads = 7;
    RunReport b = run_experiment(threaded);
    ++total;
    if (a.rendered("json") == b.rendered("json"))
      ++identical;
    else if (first_diff.empty())
      first_diff = command_name(c.cmd);
  }
  report(10, "byte-identical reports across thread counts", identical == total,
         std::to_string(identical) + "/" + std::to_string(total) +
             " commands" + (first_diff.empty() ? "" : ", first diff: " + first_diff));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_cover_validity();
  criterion_approx_ratio();
  criterion_hypothetical_bound();
  criterion_memory_and_rounds();
  criterion_sandwich();
  criterion_induced_matching();
  criterion_concentration();
  criterion_oracle_equivalence();
  criterion_determinism();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  std::printf("%s: %d criterion failure(s), %llds total\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures,
              static_cast<long long>(secs));
  return failures == 0 ? 0 : 1;
}
