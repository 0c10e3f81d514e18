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

#include "jps/kernels.h"

#include <algorithm>

namespace jps::kernels {
namespace {

// Levels smaller than this run serially; thread start-up dominates otherwise.
constexpr int kParallelGrain = 4096;

}  // namespace

// Both sweeps walk only the interior nodes of each level; children are
// contiguous, so the inner loops are dense.

void reach_sweep(const GameTree& tree, const TabularPolicy& policy,
                 std::span<double> reach) {
  const auto nodes = tree.nodes();
  const auto interior = tree.interior_nodes();
  const auto probs = policy.flat();
  const std::vector<int>& offsets = *tree.action_offsets();
  reach[tree.root()] = 1.0;
  for (int level = 0; level + 1 < tree.num_levels(); ++level) {
    const int begin = tree.interior_level_begin(level);
    const int end = tree.interior_level_begin(level + 1);
#pragma omp parallel for schedule(static) if (end - begin > kParallelGrain)
    for (int k = begin; k < end; ++k) {
      const int id = interior[k];
      const GameNode& h = nodes[id];
      const double r = reach[id];
      double* out = reach.data() + h.first_child;
      if (h.kind == NodeKind::kChance) {
        for (int c = 0; c < h.num_children; ++c) {
          out[c] = r * tree.deal(c).probability;
        }
      } else {
        const double* p = probs.data() + offsets[h.infoset];
        for (int c = 0; c < h.num_children; ++c) out[c] = r * p[c];
      }
    }
  }
}

void value_sweep(const GameTree& tree, const TabularPolicy& policy,
                 std::span<double> value) {
  const auto nodes = tree.nodes();
  const auto interior = tree.interior_nodes();
  const auto probs = policy.flat();
  const std::vector<int>& offsets = *tree.action_offsets();
  const auto rewards = tree.node_rewards();
  std::copy(rewards.begin(), rewards.end(), value.begin());
  for (int level = tree.num_levels() - 1; level >= 0; --level) {
    const int begin = tree.interior_level_begin(level);
    const int end = tree.interior_level_begin(level + 1);
#pragma omp parallel for schedule(static) if (end - begin > kParallelGrain)
    for (int k = begin; k < end; ++k) {
      const int id = interior[k];
      const GameNode& h = nodes[id];
      const double* in = value.data() + h.first_child;
      double v = 0.0;
      if (h.kind == NodeKind::kChance) {
        for (int c = 0; c < h.num_children; ++c) {
          v += tree.deal(c).probability * in[c];
        }
      } else {
        const double* p = probs.data() + offsets[h.infoset];
        for (int c = 0; c < h.num_children; ++c) v += p[c] * in[c];
      }
      value[id] = v;
    }
  }
}

namespace {

double reference_visit(const GameTree& tree, const TabularPolicy& policy,
                       int id, double reach_in, std::span<double> reach,
                       std::span<double> value) {
  const GameNode& h = tree.node(id);
  reach[id] = reach_in;
  if (h.kind == NodeKind::kTerminal) return value[id] = h.reward;
  double v = 0.0;
  for (int c = 0; c < h.num_children; ++c) {
    const double p = edge_prob(tree, policy, h, c);
    v += p * reference_visit(tree, policy, h.first_child + c, reach_in * p,
                             reach, value);
  }
  return value[id] = v;
}

}  // namespace

void reference_sweeps(const GameTree& tree, const TabularPolicy& policy,
                      std::span<double> reach, std::span<double> value) {
  reference_visit(tree, policy, tree.root(), 1.0, reach, value);
}

}  // namespace jps::kernels
