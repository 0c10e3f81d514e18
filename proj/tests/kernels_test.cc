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

#ifdef _OPENMP
#include <omp.h>
#endif

#include "jps/evaluate.h"
#include "jps/game_tree.h"
#include "jps/games.h"
#include "jps/kernels.h"
#include "jps/policy.h"
#include "oracle.h"

namespace jps {
namespace {

struct Case {
  const char* game;
  int size;
};
constexpr Case kCases[] = {{"comm", 1},           {"comm", 3},
                           {"simple-bidding", 4}, {"simple-bidding", 8},
                           {"mini-bridge", 2},    {"mini-bridge", 3}};

TEST_SUITE("kernels") {

TEST_CASE("sweeps equal the recursive reference bit for bit") {
  std::mt19937_64 rng(7);
  for (const Case& c : kCases) {
    CAPTURE(c.game);
    CAPTURE(c.size);
    const GameTree tree = build_tree(*make_game(c.game, c.size));
    for (int rep = 0; rep < 3; ++rep) {
      const TabularPolicy policy = rep == 0 ? random_pure_policy(tree, rng)
                                            : random_policy(tree, rng);
      std::vector<double> reach(tree.num_nodes()), value(tree.num_nodes());
      std::vector<double> ref_reach(tree.num_nodes()),
          ref_value(tree.num_nodes());
      kernels::reach_sweep(tree, policy, reach);
      kernels::value_sweep(tree, policy, value);
      kernels::reference_sweeps(tree, policy, ref_reach, ref_value);
      for (int h = 0; h < tree.num_nodes(); ++h) {
        REQUIRE(reach[h] == doctest::Approx(ref_reach[h]).epsilon(1e-14));
        REQUIRE(value[h] == doctest::Approx(ref_value[h]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("game value matches the rules recursion") {
  std::mt19937_64 rng(11);
  for (const Case& c : kCases) {
    CAPTURE(c.game);
    CAPTURE(c.size);
    const auto spec = make_game(c.game, c.size);
    const GameTree tree = build_tree(*spec);
    const testing::RulesOracle oracle(*spec, tree);
    for (int rep = 0; rep < 5; ++rep) {
      const TabularPolicy policy = rep % 2 == 0 ? random_policy(tree, rng)
                                                : random_pure_policy(tree, rng);
      CHECK(game_value(tree, policy) ==
            doctest::Approx(oracle.value(policy)).epsilon(1e-12));
    }
  }
}

TEST_CASE("reach and value identities") {
  std::mt19937_64 rng(3);
  const GameTree tree = build_tree(MiniBridgeGame(3));
  const TabularPolicy policy = random_policy(tree, rng);
  const EvalCache eval = evaluate(tree, policy);
  // Terminal reach sums to 1 and value(root) = sum reach * reward.
  double reach_total = 0.0;
  double weighted = 0.0;
  for (int h = 0; h < tree.num_nodes(); ++h) {
    const GameNode& n = tree.node(h);
    if (n.kind != NodeKind::kTerminal) continue;
    reach_total += eval.reach[h];
    weighted += eval.reach[h] * n.reward;
  }
  CHECK(reach_total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eval.root_value() == doctest::Approx(weighted).epsilon(1e-12));
  // Infoset aggregates and conditional values.
  for (const Infoset& info : tree.infosets()) {
    double r = 0.0;
    double rv = 0.0;
    for (int m : info.members) {
      r += eval.reach[m];
      rv += eval.reach[m] * eval.value[m];
    }
    REQUIRE(eval.infoset_reach[info.id] == doctest::Approx(r).epsilon(1e-12));
    REQUIRE(eval.infoset_value[info.id] == doctest::Approx(rv).epsilon(1e-12));
    double q_mix = 0.0;
    for (int a = 0; a < info.num_actions(); ++a) {
      q_mix += policy.prob(info.id, a) * eval.cond_q[info.action_offset + a];
    }
    if (r > 0) {
      REQUIRE(eval.cond_v[info.id] ==
              doctest::Approx(q_mix).epsilon(1e-10));
    } else {
      REQUIRE(eval.cond_v[info.id] == 0.0);
    }
  }
}

TEST_CASE("aggregates can be skipped") {
  const GameTree tree = build_tree(CommGame(2));
  const EvalCache eval =
      evaluate(tree, TabularPolicy::uniform(tree), {.aggregates = false});
  CHECK(eval.infoset_q.empty());
  CHECK(eval.root_value() == doctest::Approx(0.25));
}

TEST_CASE("thread count does not change results") {
  const GameTree tree = build_tree(CommGame(6));
  std::mt19937_64 rng(5);
  const TabularPolicy policy = random_policy(tree, rng);
  const EvalCache a = evaluate(tree, policy);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
  const EvalCache b = evaluate(tree, policy);
  omp_set_num_threads(saved);
#else
  const EvalCache b = evaluate(tree, policy);
#endif
  CHECK(a.reach == b.reach);
  CHECK(a.value == b.value);
  CHECK(a.infoset_q == b.infoset_q);
}

}  // TEST_SUITE

}  // namespace
}  // namespace jps
