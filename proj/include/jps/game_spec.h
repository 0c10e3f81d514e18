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
#include <span>
#include <string>
#include <vector>

namespace jps {

// Game-wide action identifier. Each game numbers its actions densely from 0;
// the legal actions at a public state are an ordered subset of them.
using ActionId = int;
using PublicSequence = std::vector<ActionId>;

// One outcome of the initial deal: a private state per player and its
// probability.
struct Deal {
  std::vector<int> private_states;
  double probability = 0.0;
};

// Rules of a collaborative imperfect-information game in which the only
// hidden information is an initial private deal and every later action is
// public. Such games have perfect recall by construction, and an infoset is
// identified by (player, observation, public sequence).
//
// Third-party games plug in by implementing this interface; build_tree()
// turns any implementation into an explicit GameTree.
class GameSpec {
 public:
  virtual ~GameSpec() = default;

  // Short identifier, e.g. "comm".
  virtual std::string name() const = 0;
  // Parameter string, e.g. "L=3".
  virtual std::string params() const = 0;

  virtual int num_players() const { return 2; }
  virtual std::vector<Deal> deal_enumeration() const = 0;

  virtual int initial_actor() const { return 0; }
  // Player to act after `history`. Defaults to strict alternation.
  virtual int actor(const PublicSequence& history) const {
    return static_cast<int>((initial_actor() + history.size()) %
                            static_cast<std::size_t>(num_players()));
  }

  virtual bool is_terminal(const PublicSequence& history) const = 0;
  // Ordered legal actions; only called on non-terminal histories.
  virtual std::vector<ActionId> legal_actions(
      const PublicSequence& history) const = 0;
  // Shared payoff; only called on terminal histories.
  virtual double reward(std::span<const int> private_states,
                        const PublicSequence& history) const = 0;

  // Private part of `player`'s infoset key. The public sequence is always
  // part of the key, so the default (own private state) gives perfect recall.
  virtual std::int64_t observation(int player,
                                   std::span<const int> private_states,
                                   const PublicSequence& /*history*/) const {
    return private_states[static_cast<std::size_t>(player)];
  }

  virtual std::string action_name(ActionId action) const = 0;
};

}  // namespace jps
