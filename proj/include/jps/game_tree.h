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
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jps/game_spec.h"

namespace jps {

enum class NodeKind : std::uint8_t { kChance, kDecision, kTerminal };

// One state h of the explicit tree. Children of a node are stored
// contiguously in [first_child, first_child + num_children), in the order of
// the acting infoset's legal actions (or the deal order for the chance root).
struct GameNode {
  NodeKind kind = NodeKind::kTerminal;
  std::int8_t player = -1;      // decision nodes only
  std::int16_t depth = 0;
  std::int32_t infoset = -1;    // decision nodes only
  std::int32_t parent = -1;
  std::int32_t first_child = -1;
  std::int32_t num_children = 0;
  std::int32_t action_index = -1;  // index of the incoming edge at the parent
  std::int32_t deal = -1;          // -1 for the chance root
  std::int32_t public_state = -1;  // -1 for the chance root
  double reward = 0.0;             // terminal nodes only
};

struct Infoset {
  int id = -1;
  int player = -1;
  int public_state = -1;
  std::int64_t observation = 0;
  std::vector<int> members;              // node ids, ascending
  std::vector<ActionId> legal_actions;   // shared by every member
  int action_offset = 0;                 // start of this infoset's slots in
                                         // flat per-(infoset, action) arrays
  int num_actions() const { return static_cast<int>(legal_actions.size()); }
};

// A node of the public tree: a public action sequence shared by one node per
// compatible deal.
struct PublicState {
  PublicSequence history;
  int parent = -1;
  int actor = -1;                        // -1 for terminal public states
  bool terminal = false;
  std::vector<ActionId> legal_actions;
  std::vector<int> children;             // public state per legal action
  std::vector<int> infosets;             // decision infosets here, ascending
};

struct BuildOptions {
  std::int64_t max_nodes = 10'000'000;
};

// Immutable arena of game states with the infoset partition and a
// public-state index (node of a given deal at a given public sequence).
//
// Nodes are numbered breadth-first from the chance root (id 0), so a parent
// always precedes its children and every depth level is a contiguous id
// range.
class GameTree {
 public:
  int root() const { return 0; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const GameNode& node(int id) const { return nodes_[id]; }
  std::span<const GameNode> nodes() const { return nodes_; }

  int num_players() const { return num_players_; }

  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  const Infoset& infoset(int id) const { return infosets_[id]; }
  std::span<const Infoset> infosets() const { return infosets_; }
  // Total number of (infoset, action) slots.
  int num_infoset_actions() const { return action_offsets_->back(); }
  const std::shared_ptr<const std::vector<int>>& action_offsets() const {
    return action_offsets_;
  }

  int num_deals() const { return static_cast<int>(deals_.size()); }
  const Deal& deal(int d) const { return deals_[d]; }
  // Probability of the chance edge into `node` (children of the root).
  double chance_prob(int node) const { return deals_[nodes_[node].deal].probability; }

  int num_public_states() const { return static_cast<int>(publics_.size()); }
  const PublicState& public_state(int id) const { return publics_[id]; }
  // Node of deal `d` at public state `p`, or -1 when absent.
  int node_at(int p, int d) const {
    return node_at_[static_cast<std::size_t>(p) * deals_.size() + d];
  }

  // Depth levels as node-id ranges: level k is [level_begin(k), level_begin(k+1)).
  int num_levels() const { return static_cast<int>(level_offsets_.size()) - 1; }
  int level_begin(int level) const { return level_offsets_[level]; }

  // Decision nodes in id order (the only nodes with policy-driven children).
  std::span<const int> decision_nodes() const { return decision_nodes_; }
  // Non-terminal nodes in id order.
  std::span<const int> interior_nodes() const { return interior_nodes_; }
  // Positions in interior_nodes() where each depth level starts.
  int interior_level_begin(int level) const {
    return interior_level_offsets_[level];
  }
  // Reward per node id; 0 for non-terminal nodes.
  std::span<const double> node_rewards() const { return rewards_; }

  const std::string& game_name() const { return game_name_; }
  const std::string& game_params() const { return game_params_; }
  const std::string& action_name(ActionId a) const { return action_names_[a]; }

  // Stable human-readable key, e.g. "p0|o3|1-2S".
  std::string infoset_key(int infoset) const;
  // Infoset whose key is `key`, or -1.
  int find_infoset(const std::string& key) const;

  // Checks every type invariant; throws StructuralError on violation.
  void validate() const;

 private:
  friend GameTree build_tree(const GameSpec& spec, const BuildOptions& options);

  std::vector<GameNode> nodes_;
  std::vector<Infoset> infosets_;
  std::shared_ptr<const std::vector<int>> action_offsets_;
  std::vector<Deal> deals_;
  std::vector<PublicState> publics_;
  std::vector<std::int32_t> node_at_;
  std::vector<int> level_offsets_;
  std::vector<int> decision_nodes_;
  std::vector<int> interior_nodes_;
  std::vector<int> interior_level_offsets_;
  std::vector<double> rewards_;
  std::vector<std::string> action_names_;
  std::string game_name_;
  std::string game_params_;
  int num_players_ = 2;
};

// Materializes `spec` into an explicit tree. Throws SizeError when the tree
// would exceed options.max_nodes and StructuralError when the spec violates
// perfect recall or has a malformed deal distribution.
GameTree build_tree(const GameSpec& spec, const BuildOptions& options = {});

// Table-style size report. States are all nodes. Infosets count the chance
// root once plus one group per (owner, owner observation, public sequence),
// where the owner is the acting player at decision nodes and the last actor
// at terminal nodes.
struct CountReport {
  std::int64_t states = 0;
  std::int64_t infosets = 0;
};
CountReport count_report(const GameTree& tree);

// Graphviz rendering for debugging small trees.
void write_dot(const GameTree& tree, std::ostream& out);

}  // namespace jps
