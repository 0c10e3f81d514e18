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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jps/game_tree.h"
#include "jps/jps.h"
#include "jps/policy.h"

// Experiment plumbing shared by the command-line tool, the benchmark and the
// acceptance suite: seeded run grids, result records, policy files, the
// identity checker and the table/benchmark drivers.
namespace jps {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Method { kCfr, kCfrJps, kJps, kSampledJps, kExhaustive, kBruteForceJps };

Method parse_method(const std::string& name);
std::string method_name(Method method);

struct ExperimentConfig {
  std::string game = "comm";
  int size = 3;
  Method method = Method::kCfrJps;
  int cfr_iterations = 1000;
  double cfr_init_noise = 1.0;
  int depth = 0;           // 0 picks default_depth()
  int samples = 0;         // m for sampled-jps
  int jps_iterations = 0;  // 0 picks 1000 (exact) or 100 (sampled)
  std::string init;        // cfr | uniform | random; empty picks per method
  StartSelection start = StartSelection::kAll;
  std::vector<std::uint64_t> seeds = {0};
  int workers = 1;
  std::int64_t max_nodes = 10'000'000;
};

// "0..99", "3", or "1,4,9".
std::vector<std::uint64_t> parse_seeds(const std::string& text);

// Search depth used when none is given: 3 for SimpleBidding N >= 16 and
// 2SuitBridge N >= 4, the full tree depth otherwise.
int default_depth(const std::string& game, int size, const GameTree& tree);

// Throws DomainError on an inconsistent configuration.
void validate(const ExperimentConfig& config);

// Overwrites fields present in a JSON object whose keys mirror the CLI flags
// ("game", "L", "N", "method", "cfr-iters", "seeds", "depth", "m", ...).
void apply_json_config(const std::string& json_text, ExperimentConfig& config);

GameTree build_game(const ExperimentConfig& config);

struct RunRecord {
  std::string game;
  std::string params;
  std::string method;
  std::uint64_t seed = 0;
  double final_value = 0.0;
  int iterations_used = 0;
  double wall_time_ms = 0.0;
  std::int64_t states = 0;
  std::int64_t infosets = 0;
  std::string tool_version = kToolVersion;
};

struct RunOutput {
  RunRecord record;
  TabularPolicy policy;
};

RunOutput run_one(const GameTree& tree, const ExperimentConfig& config,
                  std::uint64_t seed);
// One run per seed, spread over config.workers threads, returned in seed
// order. Values do not depend on the worker count.
std::vector<RunOutput> run_grid(const GameTree& tree,
                                const ExperimentConfig& config);

struct Aggregate {
  int n = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  double max = 0.0;
};
Aggregate aggregate(std::span<const double> values);
Aggregate aggregate(std::span<const RunRecord> records);

// CSV with the RunRecord columns and a trailing "#aggregate" line.
void write_csv(std::ostream& out, std::span<const RunRecord> records);
void write_ndjson(std::ostream& out, std::span<const RunRecord> records);

// Policy files map infoset keys to {action name: probability}.
std::string policy_to_json(const GameTree& tree, const TabularPolicy& policy);
// Infosets missing from the file stay uniform. Throws DomainError on unknown
// keys or actions.
TabularPolicy policy_from_json(const GameTree& tree, const std::string& text);

// ---------------------------------------------------------------------------
// Identity checker

struct VerifyOptions {
  int pairs = 100;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  double rho_fault = 0.0;  // negative control: corrupts the density sum
  std::vector<double> lambdas = {-1.0, 0.0, 0.5, 1.0, 10.0};
  int monotonic_runs = 3;
  int oracle_starts = 20;
};

struct IdentityResidual {
  std::string name;
  double max_residual = 0.0;
  int worst_pair = -1;
  int checks = 0;
};

struct VerifyReport {
  std::vector<IdentityResidual> residuals;
  bool passed = true;
  // Set when a check failed: the offending pair, replayable with
  // replay_counterexample().
  std::string counterexample_json;
  // Exhaustive optimum and the best jps_main fixed point over random pure
  // starts, when the game is small enough for the oracle.
  std::optional<double> oracle_value;
  double best_start_value = 0.0;
  bool oracle_attained = false;
};

VerifyReport run_verify(const GameTree& tree, const VerifyOptions& options);
VerifyReport replay_counterexample(const std::string& json_text,
                                   const VerifyOptions& options);

// ---------------------------------------------------------------------------
// Results table and benchmark drivers

struct Table1Column {
  std::string game;
  int size = 0;
  int depth = 0;
  CountReport counts;
  std::vector<double> cfr;      // purified CFR1k value per seed
  std::vector<double> cfr_jps;  // after jps_main, per seed
  double best_known = 0.0;
  std::string best_known_source;  // "exhaustive" or "max-over-seeds"
};

Table1Column run_table1_column(const std::string& game, int size,
                               std::span<const std::uint64_t> seeds,
                               int cfr_iterations, int workers);

// Reference values for the results table; NaN where none is known.
struct ReferenceColumn {
  const char* game;
  int size;
  double cfr;
  double cfr_jps;
  double best_known;
  std::int64_t states;
  std::int64_t infosets;
};
std::span<const ReferenceColumn> reference_table1();

void write_table1_csv(std::ostream& out, std::span<const Table1Column> columns);

struct BenchRow {
  std::string game;
  std::string params;
  int depth = 0;
  int reps = 0;
  double jps_ms = 0.0;    // median per-iteration time
  double brute_ms = 0.0;  // median per-iteration time
  double speedup = 0.0;
  bool values_match = true;
};

// Times one outer iteration of jps_main and of brute_force_improve from
// purified CFR policies (one seed per repetition).
BenchRow bench_iteration(const GameTree& tree, int depth, int reps,
                         int cfr_iterations);

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace jps
