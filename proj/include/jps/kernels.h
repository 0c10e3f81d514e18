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

#include <span>

#include "jps/game_tree.h"
#include "jps/policy.h"

// Level-synchronous sweeps over the breadth-first node arena. Nodes of one
// depth level never write each other's outputs, so each level is an OpenMP
// parallel loop and results are bitwise identical to a serial run.
namespace jps::kernels {

// reach[root] = 1 and reach[child] = reach[parent] * edge probability.
void reach_sweep(const GameTree& tree, const TabularPolicy& policy,
                 std::span<double> reach);

// value[terminal] = reward and value[h] = sum over children of
// edge probability * value[child].
void value_sweep(const GameTree& tree, const TabularPolicy& policy,
                 std::span<double> value);

// Plain recursive depth-first evaluation kept as the reference the parallel
// sweeps are tested and benchmarked against.
void reference_sweeps(const GameTree& tree, const TabularPolicy& policy,
                      std::span<double> reach, std::span<double> value);

// Edge probability of the `i`-th child of interior node `h`.
inline double edge_prob(const GameTree& tree, const TabularPolicy& policy,
                        const GameNode& h, int i) {
  if (h.kind == NodeKind::kChance) return tree.deal(i).probability;
  return policy.prob(h.infoset, i);
}

}  // namespace jps::kernels
