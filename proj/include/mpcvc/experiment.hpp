#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpcvc/mpc_sim.hpp"
#include "mpcvc/oracle.hpp"

namespace mpcvc {

enum class Command : std::uint8_t {
  run_parallel,
  run_sequential,
  compare,
  sandwich,
  memory_sweep,
  appendix_matching,
  appendix_concentration,
};

std::string command_name(Command c);

struct ExperimentConfig {
  Command command = Command::run_parallel;
  std::string graph_file;  // mutually exclusive with gen_spec
  std::string gen_spec;    // "gnp:N:P" or "bip:NL:NR:P"
  std::size_t s = 0;       // 0 = linear regime (s = n)
  double c_scale = 4.0;
  double c_audit = 16.0;
  FinalPhaseMode final_mode = FinalPhaseMode::single_machine;
  std::uint64_t seed_lo = 0;
  std::uint64_t seed_hi = 0;  // inclusive; single run when equal to seed_lo
  int threads = 1;
  std::string out_path;
  std::string format = "json";  // "json" or "csv"
};

struct RunReport {
  nlohmann::json doc;
  bool hard_audits_pass = true;

  // Serialized form: the JSON document, or the CSV of its "rows" array.
  [[nodiscard]] std::string rendered(const std::string& format) const;
};

// Executes the requested pipeline. Throws ParameterError / IoError on bad
// configuration or unreadable inputs; hard audit failures are reported in the
// result, not thrown.
RunReport run_experiment(const ExperimentConfig& cfg);

// Flat CSV from an array of uniform row objects; axes selects and orders the
// columns. Rows missing a requested column are a schema mismatch.
std::string emit_plot_data(const nlohmann::json& rows,
                           const std::vector<std::string>& axes);

nlohmann::json trace_to_json(const MpcTrace& trace);
nlohmann::json sandwich_to_json(const SandwichReport& report);

// Parses "gnp:N:P" / "bip:NL:NR:P" and generates the graph under seed.
Graph graph_from_spec(const std::string& spec, RngSeed seed);

}  // namespace mpcvc
