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

#include <vector>

#include "jps/game_tree.h"
#include "jps/policy.h"

namespace jps {

// Reachability and values of every state under one fixed policy, plus the
// infoset aggregates built from them.
struct EvalCache {
  std::vector<double> reach;           // per node: total reach incl. chance
  std::vector<double> value;           // per node
  std::vector<double> infoset_reach;   // per infoset: sum of member reach
  std::vector<double> infoset_value;   // per infoset: sum reach * value
  std::vector<double> infoset_q;       // per (infoset, action)
  std::vector<double> cond_v;          // infoset_value / infoset_reach, 0 if unreached
  std::vector<double> cond_q;          // infoset_q / infoset_reach, 0 if unreached

  double root_value() const { return value[0]; }
};

struct EvalOptions {
  // Skips the infoset aggregates when only node-level data is needed.
  bool aggregates = true;
};

// One downward reach sweep and one upward value sweep, O(|nodes|).
EvalCache evaluate(const GameTree& tree, const TabularPolicy& policy,
                   const EvalOptions& options = {});

double game_value(const GameTree& tree, const TabularPolicy& policy);

}  // namespace jps
