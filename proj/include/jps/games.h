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

#include <memory>
#include <string>
#include <vector>

#include "jps/game_spec.h"

namespace jps {

// Simple communication game: P1 holds s1 in [0, 2^L), sends L public binary
// signals, then P2 guesses s1. Reward 1 on a correct guess.
//
// Action ids: 0 and 1 are the signal bits; 2 + g is the guess g.
class CommGame : public GameSpec {
 public:
  static constexpr int kMaxLength = 12;

  explicit CommGame(int length);

  std::string name() const override { return "comm"; }
  std::string params() const override;
  std::vector<Deal> deal_enumeration() const override;
  int actor(const PublicSequence& history) const override;
  bool is_terminal(const PublicSequence& history) const override;
  std::vector<ActionId> legal_actions(
      const PublicSequence& history) const override;
  double reward(std::span<const int> private_states,
                const PublicSequence& history) const override;
  std::int64_t observation(int player, std::span<const int> private_states,
                           const PublicSequence& history) const override;
  std::string action_name(ActionId action) const override;

  int length() const { return length_; }
  int num_secrets() const { return 1 << length_; }
  static ActionId guess_action(int guess) { return 2 + guess; }

 private:
  int length_;
};

// Simple bidding game: s1, s2 uniform over [0, N). Players alternate (P1
// first) bidding strictly increasing powers of two; the first pass ends the
// auction. The final bid b pays b if s1 + s2 >= b, otherwise 0.
//
// Action ids: 0 is Pass; 1 + k is the bid 2^k.
class SimpleBiddingGame : public GameSpec {
 public:
  struct Options {
    // Highest bid as a multiple of N.
    int top_bid_factor = 1;
    // Whether P1 may pass before any bid (a pass-out worth 0).
    bool opening_pass = false;
  };

  explicit SimpleBiddingGame(int n) : SimpleBiddingGame(n, Options{}) {}
  SimpleBiddingGame(int n, Options options);

  std::string name() const override { return "simple-bidding"; }
  std::string params() const override;
  std::vector<Deal> deal_enumeration() const override;
  bool is_terminal(const PublicSequence& history) const override;
  std::vector<ActionId> legal_actions(
      const PublicSequence& history) const override;
  double reward(std::span<const int> private_states,
                const PublicSequence& history) const override;
  std::string action_name(ActionId action) const override;

  static constexpr ActionId kPass = 0;
  int n() const { return n_; }
  int num_bids() const { return num_bids_; }
  // Contract level named by a bid action.
  static int bid_amount(ActionId action) { return 1 << (action - 1); }

 private:
  int n_;
  int num_bids_;
  Options options_;
};

// 2-suit mini-bridge: s1, s2 uniform over [0, N]. Ordered actions
// Pass, 1H, 1S, ..., NH, NS with strictly increasing bids. P1's opening pass
// does not end the auction; (Pass, Pass) is a pass-out worth 0; any other
// pass ends it. A final kS makes iff s1 + s2 >= N + k, a final kH makes iff
// s1 + s2 <= N - k; a made contract pays 2^(k-1), a failed one pays -1.
//
// Action ids: 0 is Pass; 2k - 1 is kH and 2k is kS.
class MiniBridgeGame : public GameSpec {
 public:
  static constexpr int kMinSize = 2;
  static constexpr int kMaxSize = 6;

  explicit MiniBridgeGame(int n);

  std::string name() const override { return "mini-bridge"; }
  std::string params() const override;
  std::vector<Deal> deal_enumeration() const override;
  bool is_terminal(const PublicSequence& history) const override;
  std::vector<ActionId> legal_actions(
      const PublicSequence& history) const override;
  double reward(std::span<const int> private_states,
                const PublicSequence& history) const override;
  std::string action_name(ActionId action) const override;

  static constexpr ActionId kPass = 0;
  int n() const { return n_; }
  static ActionId heart(int level) { return 2 * level - 1; }
  static ActionId spade(int level) { return 2 * level; }
  // Closed-form payoff of a final contract given the summed private states.
  double contract_reward(ActionId last_bid, int state_sum) const;

 private:
  int n_;
};

std::unique_ptr<GameSpec> comm_game(int length);
std::unique_ptr<GameSpec> simple_bidding(int n);
std::unique_ptr<GameSpec> two_suit_mini_bridge(int n);

// Looks up a shipped game by CLI selector ("comm", "simple-bidding",
// "mini-bridge") and its size parameter (L or N).
std::unique_ptr<GameSpec> make_game(const std::string& selector, int size);

}  // namespace jps
