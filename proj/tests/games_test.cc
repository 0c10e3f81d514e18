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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "jps/errors.h"
#include "jps/evaluate.h"
#include "jps/game_tree.h"
#include "jps/games.h"

namespace jps {
namespace {

// Rewards recomputed from the rules, without the game classes.
double comm_reward(int s1, const PublicSequence& h) {
  return h.back() - 2 == s1 ? 1.0 : 0.0;
}

double bidding_reward(int s1, int s2, const PublicSequence& h) {
  int bid = 0;
  for (ActionId a : h) {
    if (a != 0) bid = 1 << (a - 1);
  }
  return bid > 0 && s1 + s2 >= bid ? bid : 0.0;
}

double bridge_reward(int n, int s1, int s2, const PublicSequence& h) {
  ActionId last = 0;
  for (ActionId a : h) {
    if (a != 0) last = a;
  }
  if (last == 0) return 0.0;
  const int level = (last + 1) / 2;
  const bool spades = last % 2 == 0;
  const bool made = spades ? s1 + s2 >= n + level : s1 + s2 <= n - level;
  return made ? std::pow(2.0, level - 1) : -1.0;
}

template <typename F>
void check_terminal_rewards(const GameTree& tree, F expected) {
  int terminals = 0;
  for (const GameNode& n : tree.nodes()) {
    if (n.kind != NodeKind::kTerminal) continue;
    const auto& priv = tree.deal(n.deal).private_states;
    const auto& h = tree.public_state(n.public_state).history;
    REQUIRE(n.reward == expected(priv, h));
    ++terminals;
  }
  CHECK(terminals > 0);
}

TEST_SUITE("games") {

TEST_CASE("comm rewards a correct guess only") {
  CommGame game(3);
  const int s[] = {5, 0};
  CHECK(game.reward(s, {0, 1, 1, CommGame::guess_action(5)}) == 1.0);
  CHECK(game.reward(s, {1, 1, 1, CommGame::guess_action(5)}) == 1.0);
  CHECK(game.reward(s, {0, 1, 1, CommGame::guess_action(4)}) == 0.0);
  for (int l = 1; l <= 4; ++l) {
    const GameTree tree = build_tree(CommGame(l));
    check_terminal_rewards(tree, [](const auto& p, const auto& h) {
      return comm_reward(p[0], h);
    });
  }
}

TEST_CASE("comm signals are binary and P2 sees nothing private") {
  const GameTree tree = build_tree(CommGame(2));
  for (const Infoset& info : tree.infosets()) {
    if (info.player == 0) {
      CHECK(info.legal_actions == std::vector<ActionId>{0, 1});
    } else {
      CHECK(info.observation == 0);
      CHECK(info.num_actions() == 4);
      CHECK(info.members.size() == 4);
    }
  }
}

TEST_CASE("simple bidding examples") {
  SimpleBiddingGame game(4);
  const int high[] = {3, 3};
  const int low[] = {0, 0};
  // Bids are actions 1 + k for 2^k; 0 is Pass.
  CHECK(game.reward(high, {1, 2, 0}) == 2.0);
  CHECK(game.reward(low, {1, 0}) == 0.0);
  CHECK(game.num_bids() == 3);
  CHECK(game.legal_actions({}) == std::vector<ActionId>{1, 2, 3});
  CHECK(game.legal_actions({2}) == std::vector<ActionId>{0, 3});
  CHECK(game.is_terminal({1, 0}));
  CHECK_FALSE(game.is_terminal({1, 2}));
}

TEST_CASE("simple bidding terminal rewards match the rules") {
  for (int n : {2, 4, 8}) {
    const GameTree tree = build_tree(SimpleBiddingGame(n));
    check_terminal_rewards(tree, [](const auto& p, const auto& h) {
      return bidding_reward(p[0], p[1], h);
    });
  }
}

TEST_CASE("simple bidding legacy variant keeps the opening pass") {
  SimpleBiddingGame game(4, {.top_bid_factor = 2, .opening_pass = true});
  CHECK(game.legal_actions({}) == std::vector<ActionId>{0, 1, 2, 3, 4});
  CHECK(game.is_terminal({0}));
}

TEST_CASE("mini bridge examples") {
  MiniBridgeGame game(4);
  const int zeros[] = {0, 0};
  const int fours[] = {4, 4};
  CHECK(game.reward(zeros, {MiniBridgeGame::heart(4), 0}) == 8.0);
  CHECK(game.reward(fours, {MiniBridgeGame::spade(4), 0}) == 8.0);
  CHECK(game.reward(zeros, {MiniBridgeGame::spade(1), 0}) == -1.0);
  CHECK(game.reward(zeros, {0, 0}) == 0.0);
  // The opening pass keeps the auction open; a later pass closes it.
  CHECK_FALSE(game.is_terminal({0}));
  CHECK(game.is_terminal({0, 0}));
  CHECK(game.is_terminal({1, 0}));
  CHECK(game.is_terminal({0, 2, 0}));
}

TEST_CASE("mini bridge terminal rewards match the rules") {
  for (int n : {2, 3, 4}) {
    const GameTree tree = build_tree(MiniBridgeGame(n));
    check_terminal_rewards(tree, [n](const auto& p, const auto& h) {
      return bridge_reward(n, p[0], p[1], h);
    });
  }
}

TEST_CASE("mini bridge reward depends only on the sum") {
  const GameTree tree = build_tree(MiniBridgeGame(3));
  for (int p = 0; p < tree.num_public_states(); ++p) {
    if (!tree.public_state(p).terminal) continue;
    for (int a = 0; a < tree.num_deals(); ++a) {
      for (int b = 0; b < tree.num_deals(); ++b) {
        const auto& da = tree.deal(a).private_states;
        const auto& db = tree.deal(b).private_states;
        if (da[0] + da[1] != db[0] + db[1]) continue;
        CHECK(tree.node(tree.node_at(p, a)).reward ==
              tree.node(tree.node_at(p, b)).reward);
      }
    }
  }
}

TEST_CASE("bids strictly increase") {
  for (const char* g : {"simple-bidding", "mini-bridge"}) {
    const GameTree tree = build_tree(*make_game(g, 4));
    for (int p = 0; p < tree.num_public_states(); ++p) {
      const PublicState& ps = tree.public_state(p);
      if (ps.terminal) continue;
      ActionId last = 0;
      for (ActionId a : ps.history) last = std::max(last, a);
      for (ActionId a : ps.legal_actions) {
        CHECK((a == 0 || a > last));
      }
    }
  }
}

TEST_CASE("deals are uniform") {
  for (const char* g : {"comm", "simple-bidding", "mini-bridge"}) {
    const GameTree tree = build_tree(*make_game(g, 4));
    for (int d = 0; d < tree.num_deals(); ++d) {
      CHECK(tree.deal(d).probability ==
            doctest::Approx(1.0 / tree.num_deals()).epsilon(1e-15));
    }
  }
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(CommGame(0), std::invalid_argument);
  CHECK_THROWS_AS(CommGame(13), std::invalid_argument);
  CHECK_THROWS_AS(SimpleBiddingGame(3), std::invalid_argument);
  CHECK_THROWS_AS(SimpleBiddingGame(64), std::invalid_argument);
  CHECK_THROWS_AS(MiniBridgeGame(1), std::invalid_argument);
  CHECK_THROWS_AS(MiniBridgeGame(7), std::invalid_argument);
  CHECK_THROWS_AS(make_game("hanabi", 2), std::invalid_argument);
}

TEST_CASE("table sizes") {
  struct Row {
    const char* game;
    int size;
    std::int64_t states;
    std::int64_t infosets;
  };
  const Row rows[] = {
      {"comm", 3, 633, 129},          {"comm", 5, 34785, 2049},
      {"comm", 6, 270273, 8193},      {"simple-bidding", 4, 241, 61},
      {"simple-bidding", 8, 1985, 249}, {"simple-bidding", 16, 16129, 1009},
      {"mini-bridge", 3, 4081, 1021}, {"mini-bridge", 4, 25576, 5116},
  };
  for (const Row& r : rows) {
    CAPTURE(r.game);
    CAPTURE(r.size);
    const CountReport c = count_report(build_tree(*make_game(r.game, r.size)));
    CHECK(c.states == r.states);
    CHECK(c.infosets == r.infosets);
  }
}

TEST_CASE("uniform comm value is one over the secret count") {
  for (int l = 1; l <= 5; ++l) {
    const GameTree tree = build_tree(CommGame(l));
    CHECK(game_value(tree, TabularPolicy::uniform(tree)) ==
          doctest::Approx(1.0 / (1 << l)).epsilon(1e-14));
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace jps
