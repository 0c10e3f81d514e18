// Copyright (c) 2026 The JPS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: solve, verify, table1 and bench.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jps/errors.h"
#include "jps/harness.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSize = 3;
constexpr int kExitVerify = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw jps::DomainError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw jps::DomainError("cannot write " + path);
  out << text;
}

int env_workers() {
  if (const char* env = std::getenv("JPS_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

// "out.json" -> "out-7.json"
std::string seeded_path(const std::string& path, std::uint64_t seed) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  const std::string tag = "-" + std::to_string(seed);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + tag;
  }
  return path.substr(0, dot) + tag + path.substr(dot);
}

// Flags shared by subcommands that pick a game.
struct GameFlags {
  std::string game = "comm";
  int length = 0;
  int n = 0;
  CLI::Option* game_opt = nullptr;
  CLI::Option* l_opt = nullptr;
  CLI::Option* n_opt = nullptr;

  void add(CLI::App* app) {
    game_opt = app->add_option("--game", game, "comm | simple-bidding | mini-bridge");
    l_opt = app->add_option("--L", length, "Comm message length");
    n_opt = app->add_option("--N", n, "SimpleBidding / 2SuitBridge size");
  }

  void apply(jps::ExperimentConfig& config) const {
    if (game_opt->count()) config.game = game;
    if (l_opt->count() && n_opt->count()) {
      throw jps::DomainError("give only one of --L and --N");
    }
    if (l_opt->count()) config.size = length;
    if (n_opt->count()) config.size = n;
    if (config.game == "comm" && n_opt->count()) {
      throw jps::DomainError("comm takes --L");
    }
    if (config.game != "comm" && l_opt->count()) {
      throw jps::DomainError(config.game + " takes --N");
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint policy search for collaborative imperfect-information games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(jps::kToolVersion));

  // solve
  CLI::App* solve = app.add_subcommand("solve", "Run one method over a seed grid");
  GameFlags solve_game;
  solve_game.add(solve);
  std::string method, seeds, init, start, config_path, format = "csv", output,
      dump_policy, dot_path;
  int cfr_iters = 0, depth = 0, samples = 0, iters = 0, workers = 0;
  double init_noise = 0.0;
  auto* method_opt = solve->add_option("--method", method,
      "cfr | cfr+jps | jps | sampled-jps | exhaustive | brute-force-jps");
  auto* cfr_opt = solve->add_option("--cfr-iters", cfr_iters, "CFR iterations (1000)");
  auto* noise_opt = solve->add_option("--cfr-init-noise", init_noise,
      "weight of the seeded random initial CFR strategy (1.0)");
  auto* seeds_opt = solve->add_option("--seeds", seeds, "e.g. 0..99 or 1,5,9");
  auto* depth_opt = solve->add_option("--depth", depth, "search depth D (per-game default)");
  auto* m_opt = solve->add_option("-m,--samples", samples, "samples per infoset (sampled-jps)");
  auto* iters_opt = solve->add_option("--iters", iters, "search iterations T");
  auto* init_opt = solve->add_option("--init", init, "starting policy: cfr | uniform | random");
  auto* start_opt = solve->add_option("--start", start, "chain heads: all | round-robin");
  auto* workers_opt = solve->add_option("--workers", workers, "parallel runs (env JPS_WORKERS)");
  solve->add_option("--config", config_path, "JSON config; flags override it");
  solve->add_option("--format", format, "csv | ndjson")->check(CLI::IsMember({"csv", "ndjson"}));
  solve->add_option("--output", output, "result file (stdout if omitted)");
  solve->add_option("--dump-policy", dump_policy, "write the final policy as JSON");
  solve->add_option("--dot", dot_path, "write the game tree as Graphviz");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Check the density identities on random policy pairs");
  GameFlags verify_game;
  verify_game.add(verify);
  jps::VerifyOptions vopts;
  std::string replay, cex_path = "counterexample.json";
  verify->add_option("--pairs", vopts.pairs, "random (sigma, sigma') pairs");
  verify->add_option("--seed", vopts.seed, "RNG seed");
  verify->add_option("--lambda", vopts.lambdas, "lambda values for the J split");
  verify->add_option("--oracle-starts", vopts.oracle_starts, "random starts for the oracle check");
  verify->add_option("--inject-rho-fault", vopts.rho_fault, "add this to every nonzero density (negative control)");
  verify->add_option("--counterexample", cex_path, "where a failing case is written");
  verify->add_option("--replay", replay, "re-check a saved counterexample");

  // table1
  CLI::App* table1 = app.add_subcommand("table1", "Reproduce the tabular results table");
  std::string t1_out = "table1.csv", t1_seeds = "0..99";
  std::vector<std::string> t1_games;
  int t1_workers = 0;
  table1->add_option("--output", t1_out, "CSV path");
  table1->add_option("--seeds", t1_seeds, "seed grid per column");
  table1->add_option("--columns", t1_games, "subset, e.g. comm:3 mini-bridge:4");
  table1->add_option("--workers", t1_workers, "parallel runs (env JPS_WORKERS)");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "Per-iteration time of JPS vs brute force");
  std::string b_out = "bench.csv";
  int reps = 5;
  bench->add_option("--output", b_out, "CSV path");
  bench->add_option("--reps", reps, "repetitions (median reported)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      jps::ExperimentConfig config;
      config.workers = env_workers();
      if (!config_path.empty()) jps::apply_json_config(read_file(config_path), config);
      solve_game.apply(config);
      if (method_opt->count()) config.method = jps::parse_method(method);
      if (cfr_opt->count()) config.cfr_iterations = cfr_iters;
      if (noise_opt->count()) config.cfr_init_noise = init_noise;
      if (seeds_opt->count()) config.seeds = jps::parse_seeds(seeds);
      if (depth_opt->count()) config.depth = depth;
      if (m_opt->count()) config.samples = samples;
      if (iters_opt->count()) config.jps_iterations = iters;
      if (init_opt->count()) config.init = init;
      if (workers_opt->count()) config.workers = workers;
      if (start_opt->count()) {
        if (start == "all") config.start = jps::StartSelection::kAll;
        else if (start == "round-robin") config.start = jps::StartSelection::kRoundRobin;
        else throw jps::DomainError("--start must be all or round-robin");
      }
      jps::validate(config);

      const jps::GameTree tree = jps::build_game(config);
      if (!dot_path.empty()) {
        if (tree.num_nodes() > 5000) throw jps::DomainError("--dot is limited to 5000 states");
        std::ofstream out(dot_path);
        jps::write_dot(tree, out);
      }
      const std::vector<jps::RunOutput> runs = jps::run_grid(tree, config);
      std::vector<jps::RunRecord> records;
      for (const auto& r : runs) records.push_back(r.record);

      std::ostringstream text;
      if (format == "csv") jps::write_csv(text, records);
      else jps::write_ndjson(text, records);
      if (output.empty()) std::cout << text.str();
      else write_file(output, text.str());

      if (!dump_policy.empty()) {
        for (const auto& r : runs) {
          const std::string path = runs.size() == 1
                                       ? dump_policy
                                       : seeded_path(dump_policy, r.record.seed);
          write_file(path, jps::policy_to_json(tree, r.policy) + "\n");
        }
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      jps::VerifyReport report;
      if (!replay.empty()) {
        report = jps::replay_counterexample(read_file(replay), vopts);
      } else {
        jps::ExperimentConfig config;
        verify_game.apply(config);
        report = jps::run_verify(jps::build_game(config), vopts);
      }
      for (const auto& r : report.residuals) {
        std::printf("%-24s max_residual=%.3e checks=%d%s\n", r.name.c_str(),
                    r.max_residual, r.checks,
                    r.max_residual < vopts.tolerance ? "" : "  FAIL");
      }
      if (report.oracle_value) {
        std::printf("%-24s optimum=%.6f best_start=%.6f %s\n", "oracle_equivalence",
                    *report.oracle_value, report.best_start_value,
                    report.oracle_attained ? "attained" : "not attained");
      }
      if (!report.passed) {
        if (!replay.empty()) {
          std::printf("verification failed; %s still reproduces\n", replay.c_str());
          return kExitVerify;
        }
        write_file(cex_path, report.counterexample_json + "\n");
        std::printf("verification failed; counterexample written to %s\n", cex_path.c_str());
        return kExitVerify;
      }
      std::printf("all identities hold within %.0e\n", vopts.tolerance);
      return kExitOk;
    }

    if (table1->parsed()) {
      const std::vector<std::uint64_t> grid = jps::parse_seeds(t1_seeds);
      const int w = t1_workers > 0 ? t1_workers : env_workers();
      std::vector<std::pair<std::string, int>> columns;
      if (t1_games.empty()) {
        for (const auto& p : jps::reference_table1()) columns.emplace_back(p.game, p.size);
      } else {
        for (const std::string& c : t1_games) {
          const auto colon = c.find(':');
          if (colon == std::string::npos) throw jps::DomainError("column must be game:size");
          columns.emplace_back(c.substr(0, colon), std::stoi(c.substr(colon + 1)));
        }
      }
      std::vector<jps::Table1Column> results;
      for (const auto& [game, size] : columns) {
        std::fprintf(stderr, "table1: %s %d\n", game.c_str(), size);
        results.push_back(jps::run_table1_column(game, size, grid, 1000, w));
      }
      std::ostringstream text;
      jps::write_table1_csv(text, results);
      write_file(t1_out, text.str());
      std::cout << text.str();
      return kExitOk;
    }

    if (bench->parsed()) {
      struct Case {
        const char* game;
        int size;
        int depth;  // 0 = full depth
      };
      const Case cases[] = {{"comm", 4, 0},
                            {"simple-bidding", 8, 0},
                            {"simple-bidding", 16, 3},
                            {"mini-bridge", 4, 3}};
      std::vector<jps::BenchRow> rows;
      for (const Case& c : cases) {
        jps::ExperimentConfig config;
        config.game = c.game;
        config.size = c.size;
        const jps::GameTree tree = jps::build_game(config);
        std::fprintf(stderr, "bench: %s %d\n", c.game, c.size);
        rows.push_back(jps::bench_iteration(
            tree, c.depth > 0 ? c.depth : tree.num_levels(), reps, 1000));
      }
      std::ostringstream text;
      jps::write_bench_csv(text, rows);
      write_file(b_out, text.str());
      std::cout << text.str();
      return kExitOk;
    }
  } catch (const jps::SizeError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kExitSize;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
