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

#include <map>
#include <sstream>

#include "jps/evaluate.h"
#include "jps/game_tree.h"
#include "jps/games.h"
#include "jps/policy.h"

namespace jps {
namespace {

// A learned policy for 2-suit mini-bridge N=4: the auction played
// for each (P1 hearts, P2 hearts) pair. Private states count spades, so
// state = 4 - hearts.
const char* const kAuctions[5][5] = {
    {"1S-2S-3S-4S-P", "1S-2S-3S-P", "1S-2H-2S-P", "1S-P", "1S-2H-2S-4H-4S-P"},
    {"P-2S-3S-P", "P-1S-2S-P", "P-P", "P-P", "P-1H-P"},
    {"P-2S-P", "P-1S-P", "P-P", "P-P", "P-1H-2H-P"},
    {"1H-1S-P", "1H-P", "1H-P", "1H-2H-P", "1H-3H-P"},
    {"1H-1S-4H-4S-P", "1H-P", "1H-P", "1H-2H-3H-P", "1H-3H-3S-4H-P"},
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string tok; std::getline(in, tok, '-');) out.push_back(tok);
  return out;
}

TEST_CASE("learned mini-bridge policy replays under these rules" *
          doctest::test_suite("games")) {
  const MiniBridgeGame game(4);
  const GameTree tree = build_tree(game);
  std::map<std::string, ActionId> by_name;
  for (ActionId a = 0; a <= 8; ++a) by_name[game.action_name(a)] = a;

  TabularPolicy policy = TabularPolicy::constant(tree, 0);
  std::map<int, int> chosen;  // infoset -> action index
  int conflicts = 0;
  for (int h1 = 0; h1 <= 4; ++h1) {
    for (int h2 = 0; h2 <= 4; ++h2) {
      CAPTURE(kAuctions[h1][h2]);
      int deal = -1;
      for (int d = 0; d < tree.num_deals(); ++d) {
        const auto& s = tree.deal(d).private_states;
        if (s[0] == 4 - h1 && s[1] == 4 - h2) deal = d;
      }
      REQUIRE(deal >= 0);
      int h = tree.node(0).first_child + deal;
      for (const std::string& bid : split(kAuctions[h1][h2])) {
        REQUIRE(by_name.count(bid) == 1);
        const GameNode& n = tree.node(h);
        REQUIRE(n.kind == NodeKind::kDecision);
        const auto& legal = tree.infoset(n.infoset).legal_actions;
        const auto it = std::find(legal.begin(), legal.end(), by_name[bid]);
        REQUIRE(it != legal.end());
        const int index = static_cast<int>(it - legal.begin());
        const auto [slot, fresh] = chosen.emplace(n.infoset, index);
        if (!fresh && slot->second != index) ++conflicts;
        policy.set_one_hot(n.infoset, index);
        h = n.first_child + index;
      }
      CHECK(tree.node(h).kind == NodeKind::kTerminal);
    }
  }
  // One deterministic joint policy explains every row and column.
  CHECK(conflicts == 0);
  CHECK(game_value(tree, policy) == doctest::Approx(46.0 / 25.0));
}

}  // namespace
}  // namespace jps
