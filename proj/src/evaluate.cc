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

#include "jps/evaluate.h"

#include "jps/kernels.h"

namespace jps {

EvalCache evaluate(const GameTree& tree, const TabularPolicy& policy,
                   const EvalOptions& options) {
  EvalCache cache;
  cache.reach.resize(static_cast<std::size_t>(tree.num_nodes()));
  cache.value.resize(static_cast<std::size_t>(tree.num_nodes()));
  kernels::reach_sweep(tree, policy, cache.reach);
  kernels::value_sweep(tree, policy, cache.value);
  if (!options.aggregates) return cache;

  const int num_infosets = tree.num_infosets();
  cache.infoset_reach.assign(num_infosets, 0.0);
  cache.infoset_value.assign(num_infosets, 0.0);
  cache.cond_v.assign(num_infosets, 0.0);
  cache.infoset_q.assign(tree.num_infoset_actions(), 0.0);
  cache.cond_q.assign(tree.num_infoset_actions(), 0.0);

#pragma omp parallel for schedule(dynamic, 64) if (num_infosets > 4096)
  for (int i = 0; i < num_infosets; ++i) {
    const Infoset& info = tree.infoset(i);
    double* q = cache.infoset_q.data() + info.action_offset;
    double r_sum = 0.0;
    double v_sum = 0.0;
    for (int member : info.members) {
      const GameNode& h = tree.node(member);
      const double r = cache.reach[member];
      r_sum += r;
      v_sum += r * cache.value[member];
      for (int a = 0; a < h.num_children; ++a) {
        q[a] += r * cache.value[h.first_child + a];
      }
    }
    cache.infoset_reach[i] = r_sum;
    cache.infoset_value[i] = v_sum;
    if (r_sum > 0.0) {
      cache.cond_v[i] = v_sum / r_sum;
      for (int a = 0; a < info.num_actions(); ++a) {
        cache.cond_q[info.action_offset + a] = q[a] / r_sum;
      }
    }
  }
  return cache;
}

double game_value(const GameTree& tree, const TabularPolicy& policy) {
  std::vector<double> value(static_cast<std::size_t>(tree.num_nodes()));
  kernels::value_sweep(tree, policy, value);
  return value[tree.root()];
}

}  // namespace jps
