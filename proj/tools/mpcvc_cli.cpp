#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mpcvc/errors.hpp"
#include "mpcvc/experiment.hpp"

namespace {

struct CliOptions {
  mpcvc::ExperimentConfig cfg;
  std::string seeds;       // "A" or "A..B"
  std::string final_mode = "single";
};

void add_common(CLI::App* sub, CliOptions& opts) {
  sub->add_option("--graph", opts.cfg.graph_file, "graph file (edge list)");
  sub->add_option("--gen", opts.cfg.gen_spec, "generator spec: gnp:N:P or bip:NL:NR:P");
  sub->add_option("--s", opts.cfg.s, "memory per machine (0 = linear regime, s = n)");
  sub->add_option("--c-scale", opts.cfg.c_scale, "scaling constant (default 4)");
  sub->add_option("--c-audit", opts.cfg.c_audit, "memory audit slack (default 16)");
  sub->add_option("--final-mode", opts.final_mode, "single|iterated");
  sub->add_option("--seed", opts.seeds, "seed, or sweep range A..B");
  sub->add_option("--seeds", opts.seeds, "alias of --seed");
  sub->add_option("--threads", opts.cfg.threads, "worker threads");
  sub->add_option("--out", opts.cfg.out_path, "report output path");
  sub->add_option("--format", opts.cfg.format, "json|csv");
}

void parse_seeds(const std::string& text, mpcvc::ExperimentConfig& cfg) {
  if (text.empty()) return;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      cfg.seed_lo = cfg.seed_hi = std::stoull(text);
    } else {
      cfg.seed_lo = std::stoull(text.substr(0, dots));
      cfg.seed_hi = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::logic_error&) {
    throw mpcvc::ParameterError("bad seed spec: " + text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MPC vertex-cover peeling simulator and auditors"};
  app.require_subcommand(1);

  CliOptions opts;
  const std::pair<std::string, mpcvc::Command> commands[] = {
      {"run-parallel", mpcvc::Command::run_parallel},
      {"run-sequential", mpcvc::Command::run_sequential},
      {"compare", mpcvc::Command::compare},
      {"sandwich", mpcvc::Command::sandwich},
      {"memory-sweep", mpcvc::Command::memory_sweep},
      {"appendix-matching", mpcvc::Command::appendix_matching},
      {"appendix-concentration", mpcvc::Command::appendix_concentration},
  };
  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name);
    add_common(sub, opts);
    sub->callback([&opts, cmd]() { opts.cfg.command = cmd; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    parse_seeds(opts.seeds, opts.cfg);
    if (opts.final_mode == "single") {
      opts.cfg.final_mode = mpcvc::FinalPhaseMode::single_machine;
    } else if (opts.final_mode == "iterated") {
      opts.cfg.final_mode = mpcvc::FinalPhaseMode::iterated_peeling;
    } else {
      throw mpcvc::ParameterError("--final-mode must be single or iterated");
    }

    mpcvc::RunReport report = mpcvc::run_experiment(opts.cfg);
    const std::string text = report.rendered(opts.cfg.format);
    if (!opts.cfg.out_path.empty()) {
      std::ofstream out(opts.cfg.out_path, std::ios::binary);
      if (!out) throw mpcvc::IoError("cannot write " + opts.cfg.out_path);
      out << text;
    } else {
      std::cout << text;
    }
    if (!report.hard_audits_pass) {
      std::cerr << "audit failure (see report)\n";
      return 1;
    }
    return 0;
  } catch (const mpcvc::ParameterError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const mpcvc::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  } catch (const mpcvc::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
