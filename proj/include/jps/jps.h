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
#include <span>
#include <vector>

#include "jps/evaluate.h"
#include "jps/game_tree.h"
#include "jps/policy.h"

namespace jps {

// One forced choice of a proposal: infoset `infoset` plays `action` (an index
// into its legal actions) with probability 1.
struct ChainLink {
  int infoset = -1;
  int action = -1;
  bool operator==(const ChainLink&) const = default;
};

// Ordered chain of one-hot overrides. Link k+1's infoset is a successor of
// link k's infoset under link k's action, so exactly one infoset is active
// at each depth.
struct ActiveSetProposal {
  std::vector<ChainLink> chain;
  int depth() const { return static_cast<int>(chain.size()); }
  bool empty() const { return chain.empty(); }
  bool operator==(const ActiveSetProposal&) const = default;
};

enum class StartSelection {
  kAll,         // every infoset is tried as the chain head each iteration
  kRoundRobin,  // one chain head per iteration, cycling through infosets
};

struct JpsConfig {
  int max_depth = 1;          // maximal chain length
  int max_iterations = 1000;  // outer iterations
  double improvement_epsilon = 1e-9;
  StartSelection start_selection = StartSelection::kAll;
  // 0 searches with every state of an infoset; m > 0 sums over m states
  // drawn uniformly with replacement.
  int samples_per_infoset = 0;
  // Sampled mode: return the best exact-valued policy seen, the starting one
  // included, instead of the last iterate.
  bool best_over_iterations = true;
  std::uint64_t rng_seed = 0;
  // Test hook: sampled mode falls back to full enumeration when m >= |I|.
  bool enumerate_when_covered = false;
  // Worker threads scoring chain heads; results are reduced in a fixed order.
  int num_threads = 1;
};

struct ScoredProposal {
  double score = 0.0;
  ActiveSetProposal proposal;
};

// Total order used for every argmax over proposals: higher score wins; scores
// within `tol` tie and are broken by shorter chain, then lexicographically
// smaller (infoset, action) sequence.
inline constexpr double kScoreTieTolerance = 1e-12;
bool better_proposal(const ScoredProposal& a, const ScoredProposal& b,
                     double tol = kScoreTieTolerance);

// succ(I, a): infosets holding the decision nodes h·a for h in I, ascending.
std::vector<int> successors(const GameTree& tree, int infoset,
                            int action_index);

// Infosets that may head a chain (decision infosets with >1 legal action).
std::vector<int> chain_heads(const GameTree& tree);

// Copy of sigma with the proposal's one-hot overrides applied.
TabularPolicy materialize(const GameTree& tree, const TabularPolicy& sigma,
                          const ActiveSetProposal& proposal);

// Reach of node h under the materialized proposal, by walking up from h and
// substituting forced actions at active ancestors.
double altered_reach(const GameTree& tree, int h, const TabularPolicy& sigma,
                     const ActiveSetProposal& proposal,
                     const EvalCache& old_eval);

// Depth-first proposal search with one active infoset per depth. Candidates
// must share one public state. `upstream` is the chain already fixed above
// them (it determines the altered reach); `depth` is its length. Returns the
// best suffix (possibly empty with score 0) and its summed density gain.
ScoredProposal jps_search(const GameTree& tree, const TabularPolicy& sigma,
                          const EvalCache& old_eval,
                          std::span<const int> candidates,
                          const ActiveSetProposal& upstream,
                          const JpsConfig& config);

struct JpsIteration {
  double value_before = 0.0;
  double predicted_gain = 0.0;
  double value_after = 0.0;
  ActiveSetProposal proposal;
};

struct JpsResult {
  TabularPolicy policy;
  double value = 0.0;
  int iterations = 0;
  std::vector<JpsIteration> trace;
};

// Tabular joint policy search. Exact mode never decreases the game value;
// each accepted proposal is checked against a fresh evaluation and a
// std::logic_error is thrown if the predicted gain disagrees by > 1e-9.
JpsResult jps_main(const GameTree& tree, const TabularPolicy& sigma,
                   const JpsConfig& config);

// Sample-based variant: runs exactly config.max_iterations iterations, each
// applying the best sampled proposal whether or not it helps.
JpsResult sampled_jps(const GameTree& tree, const TabularPolicy& sigma,
                      const JpsConfig& config);

// Same proposal space and tie-breaking as jps_main, but every candidate is
// scored by evaluating the materialized policy over the whole tree.
JpsResult brute_force_improve(const GameTree& tree, const TabularPolicy& sigma,
                              const JpsConfig& config);

// Globally optimal deterministic joint policy. Enumerates, for every public
// state and set of still-possible deals, each assignment of actions to the
// actor's infosets there; `max_candidates` caps the number of assignments.
struct ExhaustiveResult {
  TabularPolicy policy;
  double value = 0.0;
  std::int64_t candidates = 0;
};
ExhaustiveResult exhaustive_optimal(const GameTree& tree,
                                    std::int64_t max_candidates = 10'000'000);

}  // namespace jps
