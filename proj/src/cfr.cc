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

#include "jps/cfr.h"

#include <algorithm>
#include <random>

#include "jps/errors.h"

namespace jps {

void regret_matching(std::span<const double> regrets, std::span<double> out) {
  double positive = 0.0;
  for (double r : regrets) positive += std::max(r, 0.0);
  if (positive > 0.0) {
    for (std::size_t a = 0; a < regrets.size(); ++a) {
      out[a] = std::max(regrets[a], 0.0) / positive;
    }
  } else {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
  }
}

CfrResult cfr_run(const GameTree& tree, int iterations, std::uint64_t seed) {
  CfrConfig config;
  config.iterations = iterations;
  config.seed = seed;
  return cfr_run(tree, config);
}

CfrResult cfr_run(const GameTree& tree, const CfrConfig& config) {
  if (config.iterations < 1) throw DomainError("cfr needs iterations >= 1");
  const double eps = config.init_perturbation;
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw DomainError("init_perturbation must lie in [0, 1]");
  }

  CfrResult result;
  result.initial_policy = TabularPolicy::uniform(tree);
  if (eps > 0.0) {
    std::mt19937_64 rng(config.seed);
    const TabularPolicy noise = random_policy(tree, rng);
    auto p = result.initial_policy.flat();
    auto q = noise.flat();
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = (1.0 - eps) * p[k] + eps * q[k];
  }

  const int n = tree.num_nodes();
  const int slots = tree.num_infoset_actions();
  CfrState& st = result.state;
  st.regrets.assign(slots, 0.0);
  st.strategy_sum.assign(slots, 0.0);

  TabularPolicy sigma = result.initial_policy;
  std::vector<double> reach0(n, 0.0), reach1(n, 0.0), value(n, 0.0);
  for (int h = 0; h < n; ++h) {
    if (tree.node(h).kind == NodeKind::kTerminal) value[h] = tree.node(h).reward;
  }
  const std::span<const int> interior = tree.interior_nodes();
  const std::span<const int> decisions = tree.decision_nodes();
  const std::vector<int>& offsets = *tree.action_offsets();
  const std::span<const double> s = sigma.flat();

  // Per iteration: the nonzero actions of every infoset (late CFR iterates
  // are sparse) and each infoset's summed own reach, which is all the
  // strategy sum needs since sigma is shared by the members.
  std::vector<int> support(slots);
  std::vector<int> support_size(tree.num_infosets());
  std::vector<double> own_reach(tree.num_infosets());

  for (int t = 1; t <= config.iterations; ++t) {
    if (t > 1) {
      for (int i = 0; i < tree.num_infosets(); ++i) {
        if (!config.update_player[tree.infoset(i).player]) continue;
        regret_matching(
            std::span<const double>(st.regrets).subspan(offsets[i], offsets[i + 1] - offsets[i]),
            sigma.at(i));
      }
    }
    for (int i = 0; i < tree.num_infosets(); ++i) {
      int k = 0;
      for (int a = 0; a < offsets[i + 1] - offsets[i]; ++a) {
        if (s[offsets[i] + a] != 0.0) support[offsets[i] + k++] = a;
      }
      support_size[i] = k;
    }
    std::fill(own_reach.begin(), own_reach.end(), 0.0);

    // Per-player reach, top-down over interior nodes (children of the
    // chance root start at 1).
    for (int h : interior) {
      const GameNode& node = tree.node(h);
      if (node.parent <= 0) {
        reach0[h] = reach1[h] = 1.0;
        continue;
      }
      const GameNode& up = tree.node(node.parent);
      const double p = s[offsets[up.infoset] + node.action_index];
      reach0[h] = up.player == 0 ? reach0[node.parent] * p : reach0[node.parent];
      reach1[h] = up.player == 1 ? reach1[node.parent] * p : reach1[node.parent];
    }

    // Values bottom-up; each decision node adds its regrets as soon as its
    // value is known.
    for (auto it = decisions.rbegin(); it != decisions.rend(); ++it) {
      const int h = *it;
      const GameNode& node = tree.node(h);
      const int off = offsets[node.infoset];
      const double* sv = s.data() + off;
      const double* cv = value.data() + node.first_child;
      const int* sup = support.data() + off;
      double v = 0.0;
      for (int k = 0; k < support_size[node.infoset]; ++k) {
        v += sv[sup[k]] * cv[sup[k]];
      }
      value[h] = v;

      const int i = node.player;
      own_reach[node.infoset] += i == 0 ? reach0[h] : reach1[h];
      const double cf =
          tree.deal(node.deal).probability * (i == 0 ? reach1[h] : reach0[h]);
      if (cf > 0.0 && config.update_player[i]) {
        double* r = st.regrets.data() + off;
        for (int a = 0; a < node.num_children; ++a) r[a] += cf * (cv[a] - v);
      }
    }
    for (int i = 0; i < tree.num_infosets(); ++i) {
      const double w = static_cast<double>(t) * own_reach[i];
      if (w == 0.0) continue;
      for (int k = offsets[i]; k < offsets[i + 1]; ++k) st.strategy_sum[k] += w * s[k];
    }
    st.iteration = t;
  }

  result.average_policy = TabularPolicy::uniform(tree);
  for (int i = 0; i < tree.num_infosets(); ++i) {
    double total = 0.0;
    for (int k = offsets[i]; k < offsets[i + 1]; ++k) total += st.strategy_sum[k];
    if (total <= 0.0) continue;
    auto out = result.average_policy.at(i);
    for (int k = offsets[i]; k < offsets[i + 1]; ++k) {
      out[k - offsets[i]] = st.strategy_sum[k] / total;
    }
  }
  return result;
}

TabularPolicy purify(const TabularPolicy& policy, const GameTree& tree,
                     std::optional<std::uint64_t> tie_seed) {
  TabularPolicy out = policy;
  std::mt19937_64 rng(tie_seed.value_or(0));
  std::vector<int> tied;
  for (int i = 0; i < tree.num_infosets(); ++i) {
    const auto v = policy.at(i);
    const double top = *std::max_element(v.begin(), v.end());
    tied.clear();
    for (int a = 0; a < static_cast<int>(v.size()); ++a) {
      if (v[a] >= top - 1e-12) tied.push_back(a);
    }
    int pick = tied.front();
    if (tie_seed && tied.size() > 1) {
      pick = tied[std::uniform_int_distribution<std::size_t>(0, tied.size() - 1)(rng)];
    }
    out.set_one_hot(i, pick);
  }
  return out;
}

}  // namespace jps
