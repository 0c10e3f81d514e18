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

#include "jps/game_tree.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <unordered_map>
#include <utility>

#include "jps/errors.h"

namespace jps {
namespace {

struct InfosetKeyHash {
  std::size_t operator()(const std::pair<int, std::int64_t>& k) const {
    return std::hash<std::int64_t>()(k.second * 1000003 + k.first);
  }
};

std::vector<PublicState> build_public_tree(const GameSpec& spec,
                                           std::int64_t max_states) {
  std::vector<PublicState> publics;
  publics.push_back(PublicState{});
  for (std::size_t i = 0; i < publics.size(); ++i) {
    if (static_cast<std::int64_t>(publics.size()) > max_states) {
      throw SizeError("public tree of " + spec.name() + " " + spec.params() +
                      " exceeds the node cap of " + std::to_string(max_states));
    }
    PublicSequence history = publics[i].history;
    if (spec.is_terminal(history)) {
      publics[i].terminal = true;
      continue;
    }
    publics[i].actor = spec.actor(history);
    publics[i].legal_actions = spec.legal_actions(history);
    if (publics[i].legal_actions.empty()) {
      throw StructuralError("non-terminal history without legal actions in " +
                            spec.name());
    }
    for (ActionId a : publics[i].legal_actions) {
      PublicState child;
      child.history = history;
      child.history.push_back(a);
      child.parent = static_cast<int>(i);
      publics[i].children.push_back(static_cast<int>(publics.size()));
      publics.push_back(std::move(child));
    }
  }
  return publics;
}

std::string join_history(const GameTree& tree, const PublicSequence& history) {
  std::string out;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i > 0) out += '-';
    out += tree.action_name(history[i]);
  }
  return out;
}

}  // namespace

GameTree build_tree(const GameSpec& spec, const BuildOptions& options) {
  GameTree tree;
  tree.game_name_ = spec.name();
  tree.game_params_ = spec.params();
  tree.num_players_ = spec.num_players();
  tree.deals_ = spec.deal_enumeration();
  if (tree.deals_.empty()) throw StructuralError("game has no deals");

  double total = 0.0;
  for (const Deal& d : tree.deals_) {
    if (!(d.probability >= 0.0)) {
      throw StructuralError("negative deal probability in " + spec.name());
    }
    if (static_cast<int>(d.private_states.size()) != spec.num_players()) {
      throw StructuralError("deal without one private state per player");
    }
    total += d.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw StructuralError("deal probabilities of " + spec.name() +
                          " sum to " + std::to_string(total));
  }

  tree.publics_ = build_public_tree(spec, options.max_nodes);
  const auto num_deals = static_cast<std::int64_t>(tree.deals_.size());
  const std::int64_t expected =
      1 + num_deals * static_cast<std::int64_t>(tree.publics_.size());
  if (expected > options.max_nodes) {
    throw SizeError(spec.name() + " " + spec.params() + " needs " +
                    std::to_string(expected) + " nodes, over the cap of " +
                    std::to_string(options.max_nodes));
  }

  ActionId max_action = 0;
  for (const PublicState& p : tree.publics_) {
    for (ActionId a : p.legal_actions) max_action = std::max(max_action, a);
  }
  for (ActionId a = 0; a <= max_action; ++a) {
    tree.action_names_.push_back(spec.action_name(a));
  }

  tree.nodes_.reserve(static_cast<std::size_t>(expected));
  tree.node_at_.assign(tree.publics_.size() * tree.deals_.size(), -1);

  GameNode root;
  root.kind = NodeKind::kChance;
  root.first_child = 1;
  root.num_children = static_cast<std::int32_t>(num_deals);
  tree.nodes_.push_back(root);

  std::unordered_map<std::pair<int, std::int64_t>, int, InfosetKeyHash> ids;
  std::vector<int> offsets{0};

  // Appends the node of deal `deal` at public state `p`.
  auto append = [&](int parent, int action_index, int deal, int p) {
    const PublicState& ps = tree.publics_[p];
    GameNode n;
    n.parent = parent;
    n.action_index = action_index;
    n.deal = deal;
    n.public_state = p;
    n.depth = static_cast<std::int16_t>(tree.nodes_[parent].depth + 1);
    const int id = static_cast<int>(tree.nodes_.size());
    const auto& priv = tree.deals_[deal].private_states;
    if (ps.terminal) {
      n.kind = NodeKind::kTerminal;
      n.reward = spec.reward(priv, ps.history);
    } else {
      n.kind = NodeKind::kDecision;
      n.player = static_cast<std::int8_t>(ps.actor);
      const std::int64_t obs = spec.observation(ps.actor, priv, ps.history);
      auto [it, inserted] = ids.try_emplace({p, obs}, tree.num_infosets());
      if (inserted) {
        Infoset info;
        info.id = it->second;
        info.player = ps.actor;
        info.public_state = p;
        info.observation = obs;
        info.legal_actions = ps.legal_actions;
        info.action_offset = offsets.back();
        offsets.push_back(offsets.back() + info.num_actions());
        tree.infosets_.push_back(std::move(info));
        tree.publics_[p].infosets.push_back(it->second);
      }
      n.infoset = it->second;
      tree.infosets_[it->second].members.push_back(id);
      n.num_children = static_cast<std::int32_t>(ps.children.size());
    }
    tree.node_at_[static_cast<std::size_t>(p) * tree.deals_.size() + deal] = id;
    tree.nodes_.push_back(n);
  };

  for (int d = 0; d < num_deals; ++d) append(0, d, d, 0);
  // The arena doubles as the breadth-first queue.
  for (std::size_t i = 1; i < tree.nodes_.size(); ++i) {
    if (tree.nodes_[i].kind != NodeKind::kDecision) continue;
    tree.nodes_[i].first_child = static_cast<std::int32_t>(tree.nodes_.size());
    const int deal = tree.nodes_[i].deal;
    const std::vector<int> children =
        tree.publics_[tree.nodes_[i].public_state].children;
    for (std::size_t a = 0; a < children.size(); ++a) {
      append(static_cast<int>(i), static_cast<int>(a), deal, children[a]);
    }
  }

  tree.action_offsets_ =
      std::make_shared<const std::vector<int>>(std::move(offsets));

  int depth = -1;
  for (int id = 0; id < tree.num_nodes(); ++id) {
    const GameNode& n = tree.nodes_[id];
    while (depth < n.depth) {
      tree.level_offsets_.push_back(id);
      ++depth;
    }
    if (n.kind == NodeKind::kDecision) tree.decision_nodes_.push_back(id);
    if (n.kind != NodeKind::kTerminal) tree.interior_nodes_.push_back(id);
    tree.rewards_.push_back(n.kind == NodeKind::kTerminal ? n.reward : 0.0);
  }
  tree.level_offsets_.push_back(tree.num_nodes());
  for (int offset : tree.level_offsets_) {
    tree.interior_level_offsets_.push_back(static_cast<int>(
        std::lower_bound(tree.interior_nodes_.begin(),
                         tree.interior_nodes_.end(), offset) -
        tree.interior_nodes_.begin()));
  }

  tree.validate();
  return tree;
}

void GameTree::validate() const {
  if (nodes_.empty() || nodes_[0].parent != -1) {
    throw StructuralError("tree must have exactly one root");
  }
  for (int id = 0; id < num_nodes(); ++id) {
    const GameNode& n = nodes_[id];
    if (id > 0 && (n.parent < 0 || n.parent >= id)) {
      throw StructuralError("node " + std::to_string(id) +
                            " has no earlier parent");
    }
    for (int c = 0; c < n.num_children; ++c) {
      const GameNode& child = nodes_[n.first_child + c];
      if (child.parent != id || child.action_index != c) {
        throw StructuralError("children of node " + std::to_string(id) +
                              " are not contiguous 0..k-1");
      }
    }
    if (n.kind == NodeKind::kDecision) {
      const Infoset& info = infosets_.at(n.infoset);
      if (info.player != n.player || n.num_children != info.num_actions() ||
          info.public_state != n.public_state) {
        throw StructuralError("node " + std::to_string(id) +
                              " disagrees with its infoset");
      }
    } else if (n.kind == NodeKind::kTerminal && n.num_children != 0) {
      throw StructuralError("terminal node with children");
    }
  }
  for (const Infoset& info : infosets_) {
    if (info.members.empty()) throw StructuralError("empty infoset");
  }

  // Perfect recall: every member of an infoset shares the acting player's own
  // previous decision (infoset, action), hence by induction its whole
  // decision history.
  for (const Infoset& info : infosets_) {
    std::pair<int, int> expected{-2, -2};
    for (int member : info.members) {
      std::pair<int, int> previous{-1, -1};
      int child = member;
      for (int h = nodes_[member].parent; h >= 0;
           child = h, h = nodes_[h].parent) {
        if (nodes_[h].kind == NodeKind::kDecision &&
            nodes_[h].player == info.player) {
          previous = {nodes_[h].infoset, nodes_[child].action_index};
          break;
        }
      }
      if (expected.first == -2) {
        expected = previous;
      } else if (previous != expected) {
        throw StructuralError("perfect recall violated at infoset " +
                              infoset_key(info.id));
      }
    }
  }
}

std::string GameTree::infoset_key(int id) const {
  const Infoset& info = infosets_[id];
  return "p" + std::to_string(info.player) + "|o" +
         std::to_string(info.observation) + "|" +
         join_history(*this, publics_[info.public_state].history);
}

int GameTree::find_infoset(const std::string& key) const {
  for (const Infoset& info : infosets_) {
    if (infoset_key(info.id) == key) return info.id;
  }
  return -1;
}

CountReport count_report(const GameTree& tree) {
  CountReport report;
  report.states = tree.num_nodes();
  report.infosets = 1 + tree.num_infosets();
  for (int p = 0; p < tree.num_public_states(); ++p) {
    const PublicState& ps = tree.public_state(p);
    if (!ps.terminal) continue;
    std::set<std::int64_t> seen;
    for (int d = 0; d < tree.num_deals(); ++d) {
      if (tree.node_at(p, d) < 0) continue;
      // A terminal is owned by the last actor; its parent's infoset carries
      // that player's observation.
      seen.insert(tree.infoset(tree.node(tree.node(tree.node_at(p, d)).parent)
                                   .infoset)
                      .observation);
    }
    report.infosets += static_cast<std::int64_t>(seen.size());
  }
  return report;
}

void write_dot(const GameTree& tree, std::ostream& out) {
  out << "digraph game {\n  node [fontname=\"monospace\"];\n";
  for (int id = 0; id < tree.num_nodes(); ++id) {
    const GameNode& n = tree.node(id);
    out << "  n" << id << " [label=\"";
    switch (n.kind) {
      case NodeKind::kChance:
        out << "chance\" shape=diamond";
        break;
      case NodeKind::kDecision:
        out << "P" << static_cast<int>(n.player) << " I" << n.infoset
            << "\" shape=circle";
        break;
      case NodeKind::kTerminal:
        out << "r=" << n.reward << "\" shape=box";
        break;
    }
    out << "];\n";
    for (int c = 0; c < n.num_children; ++c) {
      const int child = n.first_child + c;
      std::string label;
      if (n.kind == NodeKind::kChance) {
        label = "d" + std::to_string(c);
      } else {
        label = tree.action_name(tree.infoset(n.infoset).legal_actions[c]);
      }
      out << "  n" << id << " -> n" << child << " [label=\"" << label
          << "\"];\n";
    }
  }
  out << "}\n";
}

}  // namespace jps
