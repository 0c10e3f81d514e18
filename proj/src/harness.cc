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

#include "jps/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "jps/cfr.h"
#include "jps/density.h"
#include "jps/errors.h"
#include "jps/evaluate.h"
#include "jps/games.h"

namespace jps {

using nlohmann::json;

namespace {

struct MethodName {
  Method method;
  const char* name;
};
constexpr MethodName kMethods[] = {
    {Method::kCfr, "cfr"},
    {Method::kCfrJps, "cfr+jps"},
    {Method::kJps, "jps"},
    {Method::kSampledJps, "sampled-jps"},
    {Method::kExhaustive, "exhaustive"},
    {Method::kBruteForceJps, "brute-force-jps"},
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

TabularPolicy cfr_policy(const GameTree& tree, int iterations, double noise,
                         std::uint64_t seed) {
  CfrConfig config;
  config.iterations = iterations;
  config.seed = seed;
  config.init_perturbation = noise;
  return purify(cfr_run(tree, config).average_policy, tree, seed);
}

}  // namespace

Method parse_method(const std::string& name) {
  for (const MethodName& m : kMethods) {
    if (name == m.name) return m.method;
  }
  throw DomainError("unknown method '" + name + "'");
}

std::string method_name(Method method) {
  for (const MethodName& m : kMethods) {
    if (m.method == method) return m.name;
  }
  return "?";
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const std::uint64_t lo = std::stoull(text.substr(0, dots));
      const std::uint64_t hi = std::stoull(text.substr(dots + 2));
      if (hi < lo) throw DomainError("empty seed range '" + text + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      std::stringstream in(text);
      std::string item;
      while (std::getline(in, item, ',')) seeds.push_back(std::stoull(item));
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw DomainError("bad seed list '" + text + "'");
  }
  if (seeds.empty()) throw DomainError("seed list is empty");
  return seeds;
}

int default_depth(const std::string& game, int size, const GameTree& tree) {
  if ((game == "simple-bidding" && size >= 16) ||
      (game == "mini-bridge" && size >= 4)) {
    return 3;
  }
  return tree.num_levels();
}

void validate(const ExperimentConfig& config) {
  if (config.seeds.empty()) throw DomainError("no seeds");
  if (config.cfr_iterations < 1) throw DomainError("cfr-iters must be >= 1");
  if (config.depth < 0) throw DomainError("depth must be >= 0");
  if (config.jps_iterations < 0) throw DomainError("iters must be >= 0");
  if (config.workers < 1) throw DomainError("workers must be >= 1");
  if (config.samples < 0) throw DomainError("m must be >= 0");
  if (config.method == Method::kSampledJps && config.samples < 1) {
    throw DomainError("sampled-jps needs -m >= 1");
  }
  if (config.method != Method::kSampledJps && config.samples > 0) {
    throw DomainError("-m only applies to sampled-jps");
  }
  if (!config.init.empty() && config.init != "cfr" &&
      config.init != "uniform" && config.init != "random") {
    throw DomainError("init must be cfr, uniform or random");
  }
}

void apply_json_config(const std::string& json_text, ExperimentConfig& config) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("config file: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("config file must hold an object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "game") config.game = value.get<std::string>();
      else if (key == "L" || key == "N" || key == "size") config.size = value.get<int>();
      else if (key == "method") config.method = parse_method(value.get<std::string>());
      else if (key == "cfr-iters") config.cfr_iterations = value.get<int>();
      else if (key == "cfr-init-noise") config.cfr_init_noise = value.get<double>();
      else if (key == "depth") config.depth = value.get<int>();
      else if (key == "m") config.samples = value.get<int>();
      else if (key == "iters") config.jps_iterations = value.get<int>();
      else if (key == "init") config.init = value.get<std::string>();
      else if (key == "workers") config.workers = value.get<int>();
      else if (key == "max-nodes") config.max_nodes = value.get<std::int64_t>();
      else if (key == "start") {
        const std::string s = value.get<std::string>();
        if (s == "all") config.start = StartSelection::kAll;
        else if (s == "round-robin") config.start = StartSelection::kRoundRobin;
        else throw DomainError("start must be all or round-robin");
      } else if (key == "seeds") {
        config.seeds = value.is_string()
                           ? parse_seeds(value.get<std::string>())
                           : value.get<std::vector<std::uint64_t>>();
      } else if (key == "lambda" || key == "format" || key == "output" ||
                 key == "dump-policy" || key == "dot") {
        // Consumed by the command-line front end.
      } else {
        throw DomainError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("config file: ") + e.what());
  }
}

GameTree build_game(const ExperimentConfig& config) {
  auto spec = make_game(config.game, config.size);
  return build_tree(*spec, {.max_nodes = config.max_nodes});
}

RunOutput run_one(const GameTree& tree, const ExperimentConfig& config,
                  std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  std::string init = config.init;
  if (init.empty()) init = config.method == Method::kJps ? "uniform" : "cfr";

  auto initial = [&]() {
    if (init == "uniform") return TabularPolicy::uniform(tree);
    if (init == "random") {
      std::mt19937_64 rng(seed);
      return random_pure_policy(tree, rng);
    }
    return cfr_policy(tree, config.cfr_iterations, config.cfr_init_noise, seed);
  };

  JpsConfig search;
  search.max_depth = config.depth > 0
                         ? config.depth
                         : default_depth(config.game, config.size, tree);
  search.samples_per_infoset = config.samples;
  search.max_iterations = config.jps_iterations > 0
                              ? config.jps_iterations
                              : (config.samples > 0 ? 100 : 1000);
  search.start_selection = config.start;
  search.rng_seed = seed;

  RunOutput out;
  int iterations = 0;
  switch (config.method) {
    case Method::kCfr:
      out.policy = cfr_policy(tree, config.cfr_iterations,
                              config.cfr_init_noise, seed);
      iterations = config.cfr_iterations;
      break;
    case Method::kCfrJps: {
      JpsResult r = jps_main(
          tree,
          cfr_policy(tree, config.cfr_iterations, config.cfr_init_noise, seed),
          search);
      out.policy = std::move(r.policy);
      iterations = r.iterations;
      break;
    }
    case Method::kJps: {
      JpsResult r = jps_main(tree, initial(), search);
      out.policy = std::move(r.policy);
      iterations = r.iterations;
      break;
    }
    case Method::kSampledJps: {
      JpsResult r = sampled_jps(tree, initial(), search);
      out.policy = std::move(r.policy);
      iterations = r.iterations;
      break;
    }
    case Method::kBruteForceJps: {
      JpsResult r = brute_force_improve(tree, initial(), search);
      out.policy = std::move(r.policy);
      iterations = r.iterations;
      break;
    }
    case Method::kExhaustive:
      out.policy = exhaustive_optimal(tree).policy;
      break;
  }

  const CountReport counts = count_report(tree);
  RunRecord& rec = out.record;
  rec.game = tree.game_name();
  rec.params = tree.game_params();
  rec.method = method_name(config.method);
  rec.seed = seed;
  // Always an exact evaluation of the returned policy.
  rec.final_value = game_value(tree, out.policy);
  rec.iterations_used = iterations;
  rec.states = counts.states;
  rec.infosets = counts.infosets;
  rec.wall_time_ms = elapsed_ms(start);
  return out;
}

std::vector<RunOutput> run_grid(const GameTree& tree,
                                const ExperimentConfig& config) {
  validate(config);
  const int n = static_cast<int>(config.seeds.size());
  std::vector<RunOutput> out(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.workers) \
    if (config.workers > 1)
  for (int k = 0; k < n; ++k) {
    try {
      out[k] = run_one(tree, config, config.seeds[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Aggregate aggregate(std::span<const double> values) {
  Aggregate agg;
  agg.n = static_cast<int>(values.size());
  if (agg.n == 0) return agg;
  double sum = 0.0;
  agg.max = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    sum += v;
    agg.max = std::max(agg.max, v);
  }
  agg.mean = sum / agg.n;
  if (agg.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - agg.mean) * (v - agg.mean);
    agg.stderr_mean = std::sqrt(ss / (agg.n - 1) / agg.n);
  }
  return agg;
}

Aggregate aggregate(std::span<const RunRecord> records) {
  std::vector<double> values;
  for (const RunRecord& r : records) values.push_back(r.final_value);
  return aggregate(values);
}

void write_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << "game,params,method,seed,finalValue,iterationsUsed,wallTimeMillis,"
         "statesCount,infosetsCount,toolVersion\n";
  for (const RunRecord& r : records) {
    out << r.game << ',' << r.params << ',' << r.method << ',' << r.seed << ','
        << format_double(r.final_value) << ',' << r.iterations_used << ','
        << format_double(std::round(r.wall_time_ms * 1000.0) / 1000.0) << ','
        << r.states << ',' << r.infosets << ',' << r.tool_version << '\n';
  }
  if (records.empty()) return;
  const Aggregate agg = aggregate(records);
  out << "#aggregate,n=" << agg.n << ",mean=" << format_double(agg.mean)
      << ",stderr=" << format_double(agg.stderr_mean)
      << ",max=" << format_double(agg.max) << '\n';
}

void write_ndjson(std::ostream& out, std::span<const RunRecord> records) {
  for (const RunRecord& r : records) {
    json line = {{"game", r.game},
                 {"params", r.params},
                 {"method", r.method},
                 {"seed", r.seed},
                 {"finalValue", r.final_value},
                 {"iterationsUsed", r.iterations_used},
                 {"wallTimeMillis", r.wall_time_ms},
                 {"statesCount", r.states},
                 {"infosetsCount", r.infosets},
                 {"toolVersion", r.tool_version}};
    out << line.dump() << '\n';
  }
  if (records.empty()) return;
  const Aggregate agg = aggregate(records);
  out << json{{"aggregate",
               {{"n", agg.n},
                {"mean", agg.mean},
                {"stderr", agg.stderr_mean},
                {"max", agg.max}}}}
             .dump()
      << '\n';
}

std::string policy_to_json(const GameTree& tree, const TabularPolicy& policy) {
  json doc;
  doc["game"] = tree.game_name();
  doc["params"] = tree.game_params();
  json& table = doc["policy"];
  table = json::object();
  for (const Infoset& info : tree.infosets()) {
    json row = json::object();
    for (int a = 0; a < info.num_actions(); ++a) {
      row[tree.action_name(info.legal_actions[a])] = policy.prob(info.id, a);
    }
    table[tree.infoset_key(info.id)] = std::move(row);
  }
  return doc.dump(1);
}

TabularPolicy policy_from_json(const GameTree& tree, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("policy file: ") + e.what());
  }
  std::unordered_map<std::string, int> by_key;
  for (const Infoset& info : tree.infosets()) {
    by_key.emplace(tree.infoset_key(info.id), info.id);
  }
  TabularPolicy policy = TabularPolicy::uniform(tree);
  const json& table = doc.contains("policy") ? doc["policy"] : doc;
  for (const auto& [key, row] : table.items()) {
    const auto it = by_key.find(key);
    if (it == by_key.end()) throw DomainError("unknown infoset '" + key + "'");
    const Infoset& info = tree.infoset(it->second);
    auto probs = policy.at(info.id);
    std::fill(probs.begin(), probs.end(), 0.0);
    for (const auto& [action, p] : row.items()) {
      int idx = -1;
      for (int a = 0; a < info.num_actions(); ++a) {
        if (tree.action_name(info.legal_actions[a]) == action) idx = a;
      }
      if (idx < 0) {
        throw DomainError("action '" + action + "' is not legal at " + key);
      }
      probs[idx] = p.get<double>();
    }
  }
  if (!policy.is_valid(1e-9)) throw DomainError("policy file has invalid rows");
  return policy;
}

// ---------------------------------------------------------------------------
// Identity checker

namespace {

class ResidualTable {
 public:
  explicit ResidualTable(double tol) : tol_(tol) {}

  // Returns true when this check breaks the tolerance.
  bool record(const std::string& name, double residual, int pair) {
    IdentityResidual& r = find(name);
    ++r.checks;
    if (!(residual <= r.max_residual)) {
      r.max_residual = residual;
      r.worst_pair = pair;
    }
    return !(residual < tol_);
  }

  std::vector<IdentityResidual> take() { return std::move(rows_); }

 private:
  IdentityResidual& find(const std::string& name) {
    for (IdentityResidual& r : rows_) {
      if (r.name == name) return r;
    }
    rows_.push_back({name, 0.0, -1, 0});
    return rows_.back();
  }

  double tol_;
  std::vector<IdentityResidual> rows_;
};

// Checks every density identity on one (sigma, sigma') pair. Returns the name
// of the first identity that failed, or an empty string.
std::string check_pair(const GameTree& tree, const TabularPolicy& sigma,
                       const TabularPolicy& sigma_prime,
                       const VerifyOptions& options, int pair,
                       std::mt19937_64& rng, ResidualTable& table) {
  std::string failed;
  auto note = [&](const char* name, double residual) {
    if (table.record(name, residual, pair) && failed.empty()) failed = name;
  };

  const double delta = game_value(tree, sigma_prime) - game_value(tree, sigma);
  note("active_density_sum",
       std::abs(delta_via_density(tree, sigma, sigma_prime,
                                  {.rho_fault = options.rho_fault}) -
                delta));
  note("full_density_sum",
       std::abs(density_sum_all(tree, sigma, sigma_prime) - delta));

  const EvalCache old_eval = evaluate(tree, sigma);
  const DensityField field =
      density_field(tree, sigma, sigma_prime, old_eval);
  double unchanged = 0.0;
  for (const Infoset& info : tree.infosets()) {
    if (!sigma.same_at(sigma_prime, info.id)) continue;
    for (int h : info.members) unchanged = std::max(unchanged, std::abs(field.rho[h]));
  }
  note("unchanged_density_zero", unchanged);

  const auto interior = tree.interior_nodes();
  std::uniform_int_distribution<std::size_t> pick_node(0, interior.size() - 1);
  for (int k = 0; k < 3; ++k) {
    const SubtreeDelta s =
        subtree_delta(tree, interior[pick_node(rng)], sigma, sigma_prime);
    note("subtree_sum", std::abs(s.lhs - s.rhs));
  }

  const std::vector<int> active = active_set(tree, sigma, sigma_prime);
  if (!active.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
    const int infoset = active[pick(rng)];
    for (double lambda : options.lambdas) {
      const JSplit j = j_split(tree, infoset, sigma, sigma_prime, lambda);
      note("j1_plus_j2", std::abs(j.j1 + j.j2 - j.j));
    }
  }
  return failed;
}

std::string counterexample(const GameTree& tree, const std::string& identity,
                           int pair, const VerifyOptions& options,
                           const TabularPolicy& sigma,
                           const TabularPolicy& sigma_prime) {
  json doc;
  doc["game"] = tree.game_name();
  doc["params"] = tree.game_params();
  doc["identity"] = identity;
  doc["pair"] = pair;
  doc["seed"] = options.seed;
  doc["rho_fault"] = options.rho_fault;
  doc["sigma"] = json::parse(policy_to_json(tree, sigma))["policy"];
  doc["sigma_prime"] = json::parse(policy_to_json(tree, sigma_prime))["policy"];
  return doc.dump(1);
}

}  // namespace

VerifyReport run_verify(const GameTree& tree, const VerifyOptions& options) {
  VerifyReport report;
  ResidualTable table(options.tolerance);
  std::mt19937_64 rng(options.seed);
  const double rates[] = {0.05, 0.3, 1.0};

  for (int pair = 0; pair < options.pairs; ++pair) {
    // Pair 0 is sigma' = sigma; every third pair is pure, to reach the
    // zero-reach corners.
    const bool pure = pair % 3 == 2;
    TabularPolicy sigma =
        pure ? random_pure_policy(tree, rng) : random_policy(tree, rng);
    TabularPolicy sigma_prime =
        pair == 0 ? sigma : perturb_policy(tree, sigma, rates[pair % 3], rng);
    if (pure && pair != 0) sigma_prime = purify(sigma_prime, tree);
    const std::string failed =
        check_pair(tree, sigma, sigma_prime, options, pair, rng, table);
    if (!failed.empty() && report.counterexample_json.empty()) {
      report.counterexample_json =
          counterexample(tree, failed, pair, options, sigma, sigma_prime);
    }
  }

  // Exact search never lowers the value; jps_main also throws on its own
  // per-iteration checks.
  const int levels = tree.num_levels();
  for (int run = 0; run < options.monotonic_runs; ++run) {
    TabularPolicy start = random_pure_policy(tree, rng);
    JpsConfig config;
    config.max_depth = std::min(levels, 3);
    config.max_iterations = 50;
    double drop = 0.0;
    try {
      const JpsResult r = jps_main(tree, start, config);
      for (const JpsIteration& it : r.trace) {
        drop = std::max(drop, it.value_before - it.value_after);
      }
    } catch (const std::logic_error&) {
      drop = std::numeric_limits<double>::infinity();
    }
    if (table.record("jps_monotonicity", std::max(drop, 0.0), run) &&
        report.counterexample_json.empty()) {
      report.counterexample_json = counterexample(
          tree, "jps_monotonicity", run, options, start, start);
    }
  }

  if (options.oracle_starts > 0 && tree.num_deals() <= 64) {
    try {
      const ExhaustiveResult best = exhaustive_optimal(tree);
      report.oracle_value = best.value;
      report.best_start_value = -std::numeric_limits<double>::infinity();
      JpsConfig config;
      config.max_depth = levels;
      for (int s = 0; s < options.oracle_starts; ++s) {
        const JpsResult r =
            jps_main(tree, random_pure_policy(tree, rng), config);
        report.best_start_value = std::max(report.best_start_value, r.value);
      }
      report.oracle_attained =
          report.best_start_value >= best.value - options.tolerance;
    } catch (const SizeError&) {
      report.oracle_value.reset();
    }
  }

  report.residuals = table.take();
  report.passed = report.counterexample_json.empty();
  return report;
}

VerifyReport replay_counterexample(const std::string& json_text,
                                   const VerifyOptions& options) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("counterexample: ") + e.what());
  }
  const std::string params = doc.at("params").get<std::string>();
  const int size = std::stoi(params.substr(params.find('=') + 1));
  const GameTree tree = build_tree(*make_game(doc.at("game").get<std::string>(), size));
  const TabularPolicy sigma = policy_from_json(tree, doc.at("sigma").dump());
  const TabularPolicy sigma_prime =
      policy_from_json(tree, doc.at("sigma_prime").dump());

  // The recorded fault is replayed too, so a negative-control case
  // reproduces.
  VerifyOptions replayed = options;
  replayed.rho_fault = doc.value("rho_fault", options.rho_fault);
  VerifyReport report;
  ResidualTable table(options.tolerance);
  std::mt19937_64 rng(options.seed);
  const std::string failed = check_pair(tree, sigma, sigma_prime, replayed,
                                        doc.value("pair", 0), rng, table);
  report.residuals = table.take();
  report.passed = failed.empty();
  if (!failed.empty()) {
    report.counterexample_json = counterexample(
        tree, failed, doc.value("pair", 0), replayed, sigma, sigma_prime);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Results table and benchmark drivers

namespace {

constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

constexpr ReferenceColumn kReferenceTable1[] = {
    {"comm", 3, 0.89, 1.00, 1.00, 633, 129},
    {"comm", 5, 0.85, 1.00, 1.00, 34785, 2049},
    {"comm", 6, 0.85, 1.00, 1.00, 270273, 8193},
    {"comm", 7, 0.85, 1.00, 1.00, 2129793, 32769},
    {"simple-bidding", 4, 2.18, 2.20, 2.25, 241, 61},
    {"simple-bidding", 8, 4.96, 5.00, 5.06, 1985, 249},
    {"simple-bidding", 16, 10.47, 10.56, 10.75, 16129, 1009},
    {"mini-bridge", 3, 1.01, 1.07, 1.13, 4081, 1021},
    {"mini-bridge", 4, 1.62, 1.71, 1.84, 25576, 5116},
    {"mini-bridge", 5, 2.60, 2.74, 2.89, 147421, 24571},
};

}  // namespace

std::span<const ReferenceColumn> reference_table1() { return kReferenceTable1; }

Table1Column run_table1_column(const std::string& game, int size,
                               std::span<const std::uint64_t> seeds,
                               int cfr_iterations, int workers) {
  const GameTree tree = build_tree(*make_game(game, size));
  Table1Column col;
  col.game = game;
  col.size = size;
  col.depth = default_depth(game, size, tree);
  col.counts = count_report(tree);
  const int n = static_cast<int>(seeds.size());
  col.cfr.assign(n, 0.0);
  col.cfr_jps.assign(n, 0.0);
  JpsConfig config;
  config.max_depth = col.depth;

#pragma omp parallel for schedule(dynamic, 1) num_threads(workers) if (workers > 1)
  for (int k = 0; k < n; ++k) {
    const TabularPolicy start = cfr_policy(tree, cfr_iterations, 1.0, seeds[k]);
    col.cfr[k] = game_value(tree, start);
    col.cfr_jps[k] = jps_main(tree, start, config).value;
  }

  col.best_known = *std::max_element(col.cfr_jps.begin(), col.cfr_jps.end());
  col.best_known_source = "max-over-seeds";
  if (tree.num_deals() <= 64) {
    try {
      col.best_known = exhaustive_optimal(tree).value;
      col.best_known_source = "exhaustive";
    } catch (const SizeError&) {
    }
  }
  return col;
}

void write_table1_csv(std::ostream& out, std::span<const Table1Column> columns) {
  out << "game,params,row,value,reference,delta,note\n";
  for (const Table1Column& col : columns) {
    const ReferenceColumn* ref = nullptr;
    for (const ReferenceColumn& p : kReferenceTable1) {
      if (col.game == p.game && col.size == p.size) ref = &p;
    }
    const std::string params =
        (col.game == "comm" ? "L=" : "N=") + std::to_string(col.size);
    auto row = [&](const char* name, double value, double ref,
                   const std::string& note) {
      out << col.game << ',' << params << ',' << name << ','
          << format_double(value) << ',';
      if (std::isnan(ref)) {
        out << ",,";
      } else {
        out << format_double(ref) << ',' << format_double(value - ref) << ',';
      }
      out << note << '\n';
    };
    const Aggregate cfr = aggregate(col.cfr);
    const Aggregate jps = aggregate(col.cfr_jps);
    const std::string seeds = "seeds=" + std::to_string(cfr.n);
    row("CFR1k", cfr.mean, ref ? ref->cfr : kNone,
        seeds + " stderr=" + format_double(cfr.stderr_mean));
    row("CFR1k+JPS", jps.mean, ref ? ref->cfr_jps : kNone,
        seeds + " stderr=" + format_double(jps.stderr_mean) +
            " max=" + format_double(jps.max) +
            " depth=" + std::to_string(col.depth));
    row("BestKnown", col.best_known, ref ? ref->best_known : kNone,
        col.best_known_source);
    row("States", static_cast<double>(col.counts.states),
        ref ? static_cast<double>(ref->states) : kNone, "");
    row("Infosets", static_cast<double>(col.counts.infosets),
        ref ? static_cast<double>(ref->infosets) : kNone, "");
  }
}

BenchRow bench_iteration(const GameTree& tree, int depth, int reps,
                         int cfr_iterations) {
  BenchRow row;
  row.game = tree.game_name();
  row.params = tree.game_params();
  row.depth = depth;
  row.reps = reps;
  JpsConfig config;
  config.max_depth = depth;
  config.max_iterations = 1;
  std::vector<double> fast, slow;
  for (int r = 0; r < reps; ++r) {
    const TabularPolicy start =
        cfr_policy(tree, cfr_iterations, 1.0, static_cast<std::uint64_t>(r));
    auto t0 = std::chrono::steady_clock::now();
    const JpsResult a = jps_main(tree, start, config);
    fast.push_back(elapsed_ms(t0));
    t0 = std::chrono::steady_clock::now();
    const JpsResult b = brute_force_improve(tree, start, config);
    slow.push_back(elapsed_ms(t0));
    if (std::abs(a.value - b.value) > 1e-9) row.values_match = false;
  }
  row.jps_ms = median(fast);
  row.brute_ms = median(slow);
  row.speedup = row.brute_ms / std::max(row.jps_ms, 1e-6);
  return row;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "game,params,depth,reps,jpsMillisMedian,bruteForceMillisMedian,"
         "speedup,valuesMatch\n";
  for (const BenchRow& r : rows) {
    out << r.game << ',' << r.params << ',' << r.depth << ',' << r.reps << ','
        << format_double(r.jps_ms) << ',' << format_double(r.brute_ms) << ','
        << format_double(r.speedup) << ',' << (r.values_match ? 1 : 0) << '\n';
  }
}

}  // namespace jps
