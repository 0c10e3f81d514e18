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

#include "jps/policy.h"

#include <algorithm>
#include <cmath>

namespace jps {
namespace {

void fill_dirichlet(std::span<double> out, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  double total = 0.0;
  for (double& x : out) {
    x = exp1(rng);
    total += x;
  }
  for (double& x : out) x /= total;
}

}  // namespace

TabularPolicy TabularPolicy::uniform(const GameTree& tree) {
  TabularPolicy policy(tree.action_offsets());
  for (int i = 0; i < policy.num_infosets(); ++i) {
    auto v = policy.at(i);
    std::fill(v.begin(), v.end(), 1.0 / static_cast<double>(v.size()));
  }
  return policy;
}

TabularPolicy TabularPolicy::constant(const GameTree& tree, int action_index) {
  TabularPolicy policy(tree.action_offsets());
  for (int i = 0; i < policy.num_infosets(); ++i) {
    policy.set_one_hot(i, std::min(action_index, policy.num_actions(i) - 1));
  }
  return policy;
}

void TabularPolicy::set_one_hot(int infoset, int action_index) {
  auto v = at(infoset);
  std::fill(v.begin(), v.end(), 0.0);
  v[action_index] = 1.0;
}

bool TabularPolicy::same_at(const TabularPolicy& other, int infoset) const {
  auto a = at(infoset);
  auto b = other.at(infoset);
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

int TabularPolicy::one_hot_action(int infoset) const {
  auto v = at(infoset);
  int hot = -1;
  for (int a = 0; a < static_cast<int>(v.size()); ++a) {
    if (v[a] == 1.0) {
      hot = a;
    } else if (v[a] != 0.0) {
      return -1;
    }
  }
  return hot;
}

bool TabularPolicy::is_valid(double tol) const {
  for (int i = 0; i < num_infosets(); ++i) {
    double total = 0.0;
    for (double p : at(i)) {
      if (!(p >= 0.0)) return false;
      total += p;
    }
    if (std::abs(total - 1.0) > tol) return false;
  }
  return true;
}

bool TabularPolicy::covers(const GameTree& tree) const {
  return offsets_ != nullptr && *offsets_ == *tree.action_offsets();
}

TabularPolicy random_policy(const GameTree& tree, std::mt19937_64& rng) {
  TabularPolicy policy = TabularPolicy::uniform(tree);
  for (int i = 0; i < policy.num_infosets(); ++i) {
    fill_dirichlet(policy.at(i), rng);
  }
  return policy;
}

TabularPolicy random_pure_policy(const GameTree& tree, std::mt19937_64& rng) {
  TabularPolicy policy = TabularPolicy::uniform(tree);
  for (int i = 0; i < policy.num_infosets(); ++i) {
    std::uniform_int_distribution<int> pick(0, policy.num_actions(i) - 1);
    policy.set_one_hot(i, pick(rng));
  }
  return policy;
}

TabularPolicy perturb_policy(const GameTree& tree, const TabularPolicy& base,
                             double change_rate, std::mt19937_64& rng) {
  (void)tree;
  TabularPolicy policy = base;
  std::bernoulli_distribution change(change_rate);
  for (int i = 0; i < policy.num_infosets(); ++i) {
    if (change(rng)) fill_dirichlet(policy.at(i), rng);
  }
  return policy;
}

}  // namespace jps
