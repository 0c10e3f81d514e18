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
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "jps/game_tree.h"

namespace jps {

// Per-infoset probability vectors over legal actions, stored flat and indexed
// through the tree's action offsets.
class TabularPolicy {
 public:
  TabularPolicy() = default;

  static TabularPolicy uniform(const GameTree& tree);
  // Every infoset plays `action_index` clipped to its legal range. Mostly
  // useful for tests.
  static TabularPolicy constant(const GameTree& tree, int action_index);

  int num_infosets() const {
    return offsets_ ? static_cast<int>(offsets_->size()) - 1 : 0;
  }
  int num_actions(int infoset) const {
    return (*offsets_)[infoset + 1] - (*offsets_)[infoset];
  }
  std::span<const double> at(int infoset) const {
    return {probs_.data() + (*offsets_)[infoset],
            static_cast<std::size_t>(num_actions(infoset))};
  }
  std::span<double> at(int infoset) {
    return {probs_.data() + (*offsets_)[infoset],
            static_cast<std::size_t>(num_actions(infoset))};
  }
  double prob(int infoset, int action_index) const {
    return probs_[(*offsets_)[infoset] + action_index];
  }

  void set_one_hot(int infoset, int action_index);
  // Exact equality of one infoset's vector.
  bool same_at(const TabularPolicy& other, int infoset) const;
  // Action index with probability 1, or -1 when the vector is not one-hot.
  int one_hot_action(int infoset) const;

  std::span<const double> flat() const { return probs_; }
  std::span<double> flat() { return probs_; }

  // Every vector nonnegative and summing to 1 within `tol`.
  bool is_valid(double tol = 1e-12) const;
  bool covers(const GameTree& tree) const;

  bool operator==(const TabularPolicy& other) const {
    return probs_ == other.probs_;
  }

 private:
  explicit TabularPolicy(std::shared_ptr<const std::vector<int>> offsets)
      : offsets_(std::move(offsets)), probs_(offsets_->back(), 0.0) {}

  std::shared_ptr<const std::vector<int>> offsets_;
  std::vector<double> probs_;
};

// Fully mixed policy with Dirichlet(1)-distributed vectors.
TabularPolicy random_policy(const GameTree& tree, std::mt19937_64& rng);
// Uniformly random pure policy.
TabularPolicy random_pure_policy(const GameTree& tree, std::mt19937_64& rng);
// Copy of `base` where each infoset is independently redrawn (Dirichlet) with
// probability `change_rate`; untouched infosets compare exactly equal.
TabularPolicy perturb_policy(const GameTree& tree, const TabularPolicy& base,
                             double change_rate, std::mt19937_64& rng);

}  // namespace jps
