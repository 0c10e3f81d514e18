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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "jps/game_tree.h"
#include "jps/policy.h"

namespace jps {

struct CfrConfig {
  int iterations = 1000;
  std::uint64_t seed = 0;
  // The first iterate is (1 - eps) * uniform + eps * Dirichlet(1) noise drawn
  // from the seed. The default draws the whole initial strategy at random,
  // which is what makes seeds differ; 0 gives plain uniform.
  double init_perturbation = 1.0;
  // A player with updates off keeps its initial strategy: no regret is
  // accumulated for it (its strategy sum still is).
  std::array<bool, 2> update_player = {true, true};
};

struct CfrState {
  std::vector<double> regrets;       // per (infoset, action)
  std::vector<double> strategy_sum;  // per (infoset, action), weight t
  int iteration = 0;
};

struct CfrResult {
  TabularPolicy average_policy;
  TabularPolicy initial_policy;
  CfrState state;
};

// Vanilla simultaneous-update CFR with linearly weighted averaging.
CfrResult cfr_run(const GameTree& tree, const CfrConfig& config);
CfrResult cfr_run(const GameTree& tree, int iterations, std::uint64_t seed);

// Regret matching on one infoset's cumulative regrets; uniform when no
// regret is positive.
void regret_matching(std::span<const double> regrets, std::span<double> out);

// Per-infoset argmax. Ties (within 1e-12 of the max) go to the lowest action
// index, or to a uniformly drawn tied action when `tie_seed` is set.
TabularPolicy purify(const TabularPolicy& policy, const GameTree& tree,
                     std::optional<std::uint64_t> tie_seed = std::nullopt);

}  // namespace jps
