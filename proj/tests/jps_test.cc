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

#include <random>

#include "jps/cfr.h"
#include "jps/errors.h"
#include "jps/evaluate.h"
#include "jps/game_tree.h"
#include "jps/games.h"
#include "jps/jps.h"
#include "jps/policy.h"

namespace jps {
namespace {

// Best pure joint policy by plain enumeration of every assignment.
double enumerate_best(const GameTree& tree) {
  TabularPolicy p = TabularPolicy::constant(tree, 0);
  std::vector<int> digit(tree.num_infosets(), 0);
  double best = game_value(tree, p);
  for (;;) {
    int i = 0;
    while (i < tree.num_infosets() &&
           ++digit[i] == tree.infoset(i).num_actions()) {
      digit[i] = 0;
      p.set_one_hot(i, 0);
      ++i;
    }
    if (i == tree.num_infosets()) break;
    p.set_one_hot(i, digit[i]);
    best = std::max(best, game_value(tree, p));
  }
  return best;
}

bool chain_is_legal(const GameTree& tree, const ActiveSetProposal& prop) {
  for (int k = 1; k < prop.depth(); ++k) {
    const auto succ =
        successors(tree, prop.chain[k - 1].infoset, prop.chain[k - 1].action);
    if (!std::binary_search(succ.begin(), succ.end(), prop.chain[k].infoset)) {
      return false;
    }
  }
  return true;
}

TEST_SUITE("jps") {

TEST_CASE("proposal order") {
  const ScoredProposal hi{1.0, {{{3, 0}}}};
  const ScoredProposal lo{0.5, {{{1, 0}}}};
  const ScoredProposal hi_long{1.0 + 1e-13, {{{0, 0}, {5, 1}}}};
  const ScoredProposal hi_lex{1.0, {{{2, 1}}}};
  CHECK(better_proposal(hi, lo));
  CHECK_FALSE(better_proposal(lo, hi));
  CHECK(better_proposal(hi, hi_long));  // tie on score, shorter wins
  CHECK(better_proposal(hi_lex, hi));   // same length, smaller infoset
  CHECK_FALSE(better_proposal(hi, hi));
}

TEST_CASE("successors in simple bidding") {
  const GameTree tree = build_tree(SimpleBiddingGame(4));
  // The opening infoset of P1 with state 0 bids "1"; P2 then decides at
  // history [1] with each of its four states.
  const int opener = tree.find_infoset("p0|o0|");
  REQUIRE(opener >= 0);
  const std::vector<int> succ = successors(tree, opener, 0);
  REQUIRE(succ.size() == 4);
  for (int s = 0; s < 4; ++s) {
    CHECK(std::find(succ.begin(), succ.end(),
                    tree.find_infoset("p1|o" + std::to_string(s) + "|1")) !=
          succ.end());
  }
  // Pass ends the game: no successors.
  const int responder = tree.find_infoset("p1|o0|1");
  CHECK(successors(tree, responder, 0).empty());
}

TEST_CASE("chain heads skip forced infosets") {
  const GameTree tree = build_tree(SimpleBiddingGame(4));
  for (int i : chain_heads(tree)) CHECK(tree.infoset(i).num_actions() > 1);
}

TEST_CASE("altered reach matches a fresh evaluation") {
  const GameTree tree = build_tree(MiniBridgeGame(3));
  std::mt19937_64 rng(1);
  const TabularPolicy sigma = random_policy(tree, rng);
  const EvalCache eval = evaluate(tree, sigma);
  const int head = tree.find_infoset("p0|o1|");
  REQUIRE(head >= 0);
  const std::vector<int> succ = successors(tree, head, 2);
  REQUIRE_FALSE(succ.empty());
  const ActiveSetProposal prop{{{head, 2}, {succ.front(), 0}}};
  const EvalCache fresh = evaluate(tree, materialize(tree, sigma, prop));
  for (int h = 0; h < tree.num_nodes(); ++h) {
    REQUIRE(altered_reach(tree, h, sigma, prop, eval) ==
            doctest::Approx(fresh.reach[h]).epsilon(1e-12));
  }
}

TEST_CASE("search agrees with brute force") {
  struct Case {
    const char* game;
    int size;
  };
  for (const Case c : {Case{"comm", 2}, Case{"simple-bidding", 4},
                       Case{"mini-bridge", 2}}) {
    const GameTree tree = build_tree(*make_game(c.game, c.size));
    std::mt19937_64 rng(2);
    for (int depth = 1; depth <= 3; ++depth) {
      for (int rep = 0; rep < 4; ++rep) {
        CAPTURE(c.game);
        CAPTURE(depth);
        CAPTURE(rep);
        const TabularPolicy start = rep % 2 ? random_policy(tree, rng)
                                            : random_pure_policy(tree, rng);
        const JpsConfig config{.max_depth = depth, .max_iterations = 1};
        const JpsResult fast = jps_main(tree, start, config);
        const JpsResult slow = brute_force_improve(tree, start, config);
        REQUIRE(fast.iterations == slow.iterations);
        CHECK(fast.value == doctest::Approx(slow.value).epsilon(1e-12));
        if (fast.iterations == 1) {
          CHECK(fast.trace[0].proposal == slow.trace[0].proposal);
        }
      }
    }
  }
}

TEST_CASE("exact search never loses value and predicts each gain") {
  const GameTree tree = build_tree(MiniBridgeGame(3));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 rng(seed);
    const TabularPolicy start = random_policy(tree, rng);
    const JpsResult r = jps_main(tree, start, {.max_depth = 3});
    double last = game_value(tree, start);
    for (const JpsIteration& it : r.trace) {
      CHECK(it.value_before == doctest::Approx(last).epsilon(1e-12));
      CHECK(it.value_after >= it.value_before);
      CHECK(std::abs(it.value_after - it.value_before - it.predicted_gain) <
            1e-9);
      CHECK(it.predicted_gain > 1e-9);
      CHECK(chain_is_legal(tree, it.proposal));
      CHECK(it.proposal.depth() <= 3);
      last = it.value_after;
    }
    CHECK(r.value == doctest::Approx(game_value(tree, r.policy)).epsilon(1e-12));
  }
}

TEST_CASE("round robin and threads") {
  const GameTree tree = build_tree(SimpleBiddingGame(8));
  const TabularPolicy start = purify(cfr_run(tree, 100, 1).average_policy, tree);
  const JpsResult one = jps_main(tree, start, {.max_depth = 2});
  const JpsResult four =
      jps_main(tree, start, {.max_depth = 2, .num_threads = 4});
  CHECK(one.policy == four.policy);
  CHECK(one.value == four.value);
  const JpsResult rr = jps_main(
      tree, start,
      {.max_depth = 2, .start_selection = StartSelection::kRoundRobin});
  CHECK(rr.value >= game_value(tree, start));
}

TEST_CASE("fixed point stops after zero iterations") {
  const GameTree tree = build_tree(CommGame(2));
  const ExhaustiveResult best = exhaustive_optimal(tree);
  const JpsResult r = jps_main(tree, best.policy, {.max_depth = 4});
  CHECK(r.iterations == 0);
  CHECK(r.value == best.value);
}

TEST_CASE("search arguments are checked") {
  const GameTree tree = build_tree(CommGame(1));
  const TabularPolicy u = TabularPolicy::uniform(tree);
  CHECK_THROWS_AS(jps_main(tree, u, {.max_depth = -1}), std::invalid_argument);
  CHECK_THROWS_AS(sampled_jps(tree, u, {.samples_per_infoset = 0}),
                  std::invalid_argument);
  const EvalCache eval = evaluate(tree, u);
  const ActiveSetProposal bogus{{{0, 7}}};
  CHECK_THROWS_AS(materialize(tree, u, bogus), DomainError);
  (void)eval;
}

TEST_CASE("exhaustive optimum") {
  CHECK(exhaustive_optimal(build_tree(SimpleBiddingGame(2))).value ==
        doctest::Approx(0.75));
  CHECK(exhaustive_optimal(build_tree(SimpleBiddingGame(4))).value ==
        doctest::Approx(2.25));
  CHECK(exhaustive_optimal(build_tree(CommGame(1))).value == 1.0);
  CHECK(exhaustive_optimal(build_tree(CommGame(2))).value == 1.0);
  for (const GameTree& tree :
       {build_tree(SimpleBiddingGame(2)), build_tree(CommGame(1)),
        build_tree(SimpleBiddingGame(2, {.top_bid_factor = 2,
                                         .opening_pass = true}))}) {
    const ExhaustiveResult r = exhaustive_optimal(tree);
    CHECK(r.value == doctest::Approx(enumerate_best(tree)).epsilon(1e-12));
    CHECK(game_value(tree, r.policy) == doctest::Approx(r.value));
  }
}

TEST_CASE("exhaustive caps") {
  CHECK_THROWS_AS(exhaustive_optimal(build_tree(SimpleBiddingGame(16))),
                  SizeError);
  CHECK_THROWS_AS(exhaustive_optimal(build_tree(MiniBridgeGame(3)), 100),
                  SizeError);
}

TEST_CASE("random starts reach the optimum on tiny games") {
  for (const GameTree& tree : {build_tree(SimpleBiddingGame(2)),
                               build_tree(CommGame(1)),
                               build_tree(CommGame(2))}) {
    const double best = exhaustive_optimal(tree).value;
    bool hit = false;
    for (std::uint64_t s = 0; s < 20 && !hit; ++s) {
      std::mt19937_64 rng(s);
      const JpsResult r = jps_main(tree, random_pure_policy(tree, rng),
                                   {.max_depth = tree.num_levels()});
      hit = std::abs(r.value - best) < 1e-9;
    }
    CHECK(hit);
  }
}

TEST_CASE("sampled search") {
  const GameTree tree = build_tree(SimpleBiddingGame(8));
  const TabularPolicy start = purify(cfr_run(tree, 100, 2).average_policy, tree);
  const double v0 = game_value(tree, start);
  const JpsConfig config{.max_depth = 2,
                         .max_iterations = 10,
                         .samples_per_infoset = 3,
                         .rng_seed = 5};
  const JpsResult a = sampled_jps(tree, start, config);
  const JpsResult b = sampled_jps(tree, start, config);
  CHECK(a.policy == b.policy);
  CHECK(a.value >= v0);
  CHECK(a.value == doctest::Approx(game_value(tree, a.policy)).epsilon(1e-12));
  // With every member enumerated the first sampled step is the exact step.
  JpsConfig full = config;
  full.samples_per_infoset = 64;
  full.enumerate_when_covered = true;
  full.max_iterations = 1;
  full.best_over_iterations = false;
  const JpsResult s = sampled_jps(tree, start, full);
  const JpsResult e = jps_main(tree, start, {.max_depth = 2, .max_iterations = 1});
  CHECK(s.policy == e.policy);
}

}  // TEST_SUITE

}  // namespace
}  // namespace jps
