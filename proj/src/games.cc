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

#include "jps/games.h"

#include <stdexcept>
#include <string>

namespace jps {
namespace {

std::vector<Deal> uniform_pairs(int values) {
  std::vector<Deal> deals;
  deals.reserve(static_cast<std::size_t>(values) * values);
  const double p = 1.0 / (static_cast<double>(values) * values);
  for (int s1 = 0; s1 < values; ++s1) {
    for (int s2 = 0; s2 < values; ++s2) {
      deals.push_back(Deal{{s1, s2}, p});
    }
  }
  return deals;
}

// Highest bid in an auction history, or 0 (Pass) when nobody has bid.
ActionId last_bid(const PublicSequence& history) {
  ActionId bid = 0;
  for (ActionId a : history) {
    if (a != 0) bid = a;
  }
  return bid;
}

}  // namespace

// ---------------------------------------------------------------------------
// CommGame

CommGame::CommGame(int length) : length_(length) {
  if (length < 1 || length > kMaxLength) {
    throw std::invalid_argument("comm: L must be in [1, " +
                                std::to_string(kMaxLength) + "], got " +
                                std::to_string(length));
  }
}

std::string CommGame::params() const { return "L=" + std::to_string(length_); }

std::vector<Deal> CommGame::deal_enumeration() const {
  std::vector<Deal> deals;
  const double p = 1.0 / num_secrets();
  for (int s = 0; s < num_secrets(); ++s) deals.push_back(Deal{{s, 0}, p});
  return deals;
}

int CommGame::actor(const PublicSequence& history) const {
  return static_cast<int>(history.size()) < length_ ? 0 : 1;
}

bool CommGame::is_terminal(const PublicSequence& history) const {
  return static_cast<int>(history.size()) > length_;
}

std::vector<ActionId> CommGame::legal_actions(
    const PublicSequence& history) const {
  if (static_cast<int>(history.size()) < length_) return {0, 1};
  std::vector<ActionId> guesses(static_cast<std::size_t>(num_secrets()));
  for (int g = 0; g < num_secrets(); ++g) guesses[g] = guess_action(g);
  return guesses;
}

double CommGame::reward(std::span<const int> private_states,
                        const PublicSequence& history) const {
  return history.back() == guess_action(private_states[0]) ? 1.0 : 0.0;
}

std::int64_t CommGame::observation(int player,
                                   std::span<const int> private_states,
                                   const PublicSequence&) const {
  return player == 0 ? private_states[0] : 0;
}

std::string CommGame::action_name(ActionId action) const {
  if (action < 2) return std::to_string(action);
  return "g" + std::to_string(action - 2);
}

// ---------------------------------------------------------------------------
// SimpleBiddingGame

SimpleBiddingGame::SimpleBiddingGame(int n, Options options)
    : n_(n), num_bids_(0), options_(options) {
  if (n != 2 && n != 4 && n != 8 && n != 16 && n != 32) {
    throw std::invalid_argument(
        "simple-bidding: N must be one of 2, 4, 8, 16, 32, got " +
        std::to_string(n));
  }
  if (options.top_bid_factor != 1 && options.top_bid_factor != 2) {
    throw std::invalid_argument("simple-bidding: top bid factor must be 1 or 2");
  }
  for (int top = n * options.top_bid_factor; top > 0; top >>= 1) ++num_bids_;
}

std::string SimpleBiddingGame::params() const {
  return "N=" + std::to_string(n_);
}

std::vector<Deal> SimpleBiddingGame::deal_enumeration() const {
  return uniform_pairs(n_);
}

bool SimpleBiddingGame::is_terminal(const PublicSequence& history) const {
  return !history.empty() && history.back() == kPass;
}

std::vector<ActionId> SimpleBiddingGame::legal_actions(
    const PublicSequence& history) const {
  std::vector<ActionId> actions;
  if (!history.empty() || options_.opening_pass) actions.push_back(kPass);
  for (ActionId bid = last_bid(history) + 1; bid <= num_bids_; ++bid) {
    actions.push_back(bid);
  }
  return actions;
}

double SimpleBiddingGame::reward(std::span<const int> private_states,
                                 const PublicSequence& history) const {
  const ActionId bid = last_bid(history);
  if (bid == kPass) return 0.0;
  const int amount = bid_amount(bid);
  return private_states[0] + private_states[1] >= amount ? amount : 0.0;
}

std::string SimpleBiddingGame::action_name(ActionId action) const {
  if (action == kPass) return "P";
  return std::to_string(bid_amount(action));
}

// ---------------------------------------------------------------------------
// MiniBridgeGame

MiniBridgeGame::MiniBridgeGame(int n) : n_(n) {
  if (n < kMinSize || n > kMaxSize) {
    throw std::invalid_argument("mini-bridge: N must be in [2, 6], got " +
                                std::to_string(n));
  }
}

std::string MiniBridgeGame::params() const {
  return "N=" + std::to_string(n_);
}

std::vector<Deal> MiniBridgeGame::deal_enumeration() const {
  return uniform_pairs(n_ + 1);
}

bool MiniBridgeGame::is_terminal(const PublicSequence& history) const {
  if (history.empty() || history.back() != kPass) return false;
  // An opening pass keeps the auction open for P2.
  return history.size() > 1;
}

std::vector<ActionId> MiniBridgeGame::legal_actions(
    const PublicSequence& history) const {
  std::vector<ActionId> actions{kPass};
  for (ActionId bid = last_bid(history) + 1; bid <= 2 * n_; ++bid) {
    actions.push_back(bid);
  }
  return actions;
}

double MiniBridgeGame::contract_reward(ActionId bid, int state_sum) const {
  const int level = (bid + 1) / 2;
  const bool spades = bid % 2 == 0;
  const bool made =
      spades ? state_sum >= n_ + level : state_sum <= n_ - level;
  return made ? static_cast<double>(1 << (level - 1)) : -1.0;
}

double MiniBridgeGame::reward(std::span<const int> private_states,
                              const PublicSequence& history) const {
  const ActionId bid = last_bid(history);
  if (bid == kPass) return 0.0;
  return contract_reward(bid, private_states[0] + private_states[1]);
}

std::string MiniBridgeGame::action_name(ActionId action) const {
  if (action == kPass) return "P";
  return std::to_string((action + 1) / 2) + (action % 2 == 0 ? "S" : "H");
}

// ---------------------------------------------------------------------------

std::unique_ptr<GameSpec> comm_game(int length) {
  return std::make_unique<CommGame>(length);
}

std::unique_ptr<GameSpec> simple_bidding(int n) {
  return std::make_unique<SimpleBiddingGame>(n);
}

std::unique_ptr<GameSpec> two_suit_mini_bridge(int n) {
  return std::make_unique<MiniBridgeGame>(n);
}

std::unique_ptr<GameSpec> make_game(const std::string& selector, int size) {
  if (selector == "comm") return comm_game(size);
  if (selector == "simple-bidding") return simple_bidding(size);
  if (selector == "mini-bridge") return two_suit_mini_bridge(size);
  throw std::invalid_argument("unknown game '" + selector +
                              "' (expected comm, simple-bidding, mini-bridge)");
}

}  // namespace jps
