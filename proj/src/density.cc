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

#include "jps/density.h"

#include <string>

#include "jps/errors.h"
#include "jps/kernels.h"

namespace jps {

std::vector<int> active_set(const GameTree& tree, const TabularPolicy& sigma,
                            const TabularPolicy& sigma_prime) {
  std::vector<int> active;
  for (int i = 0; i < tree.num_infosets(); ++i) {
    if (!sigma.same_at(sigma_prime, i)) active.push_back(i);
  }
  return active;
}

std::vector<double> altered_reach_sweep(const GameTree& tree,
                                        const TabularPolicy& sigma,
                                        const TabularPolicy& sigma_prime,
                                        const EvalCache& old_eval) {
  std::vector<double> altered = old_eval.reach;
  std::vector<char> changed(static_cast<std::size_t>(tree.num_nodes()), 0);
  for (int id : tree.interior_nodes()) {
    const GameNode& h = tree.node(id);
    const bool active = h.kind == NodeKind::kDecision &&
                        !sigma.same_at(sigma_prime, h.infoset);
    if (!active && !changed[id]) continue;
    for (int c = 0; c < h.num_children; ++c) {
      const int child = h.first_child + c;
      altered[child] =
          altered[id] * kernels::edge_prob(tree, sigma_prime, h, c);
      changed[child] = 1;
    }
  }
  return altered;
}

double cost(const GameTree& /*tree*/, int h, const EvalCache& old_eval,
            std::span<const double> altered_reach) {
  return (altered_reach[h] - old_eval.reach[h]) * old_eval.value[h];
}

double rho(const GameTree& tree, int h, const TabularPolicy& sigma,
           const TabularPolicy& sigma_prime, const EvalCache& old_eval,
           std::span<const double> altered_reach,
           const DensityOptions& options) {
  const GameNode& node = tree.node(h);
  if (node.kind != NodeKind::kDecision) {
    throw DomainError("rho is defined on decision nodes; node " +
                      std::to_string(h) + " is not one");
  }
  if (sigma.same_at(sigma_prime, node.infoset)) return 0.0;
  const auto policy = sigma_prime.at(node.infoset);
  double expected = 0.0;
  for (int a = 0; a < node.num_children; ++a) {
    expected += policy[a] * old_eval.value[node.first_child + a];
  }
  return altered_reach[h] * (expected - old_eval.value[h]) +
         options.rho_fault;
}

double rho_from_costs(const GameTree& tree, int h, const EvalCache& old_eval,
                      std::span<const double> altered_reach) {
  const GameNode& node = tree.node(h);
  if (node.kind == NodeKind::kTerminal) {
    throw DomainError("rho is undefined at terminal node " +
                      std::to_string(h));
  }
  double total = -cost(tree, h, old_eval, altered_reach);
  for (int c = 0; c < node.num_children; ++c) {
    total += cost(tree, node.first_child + c, old_eval, altered_reach);
  }
  return total;
}

DensityField density_field(const GameTree& tree, const TabularPolicy& sigma,
                           const TabularPolicy& sigma_prime,
                           const EvalCache& old_eval) {
  DensityField field;
  field.altered_reach = altered_reach_sweep(tree, sigma, sigma_prime, old_eval);
  field.cost.resize(static_cast<std::size_t>(tree.num_nodes()));
  field.rho.assign(static_cast<std::size_t>(tree.num_nodes()), 0.0);
  for (int id = 0; id < tree.num_nodes(); ++id) {
    field.cost[id] = cost(tree, id, old_eval, field.altered_reach);
  }
  for (int id : tree.interior_nodes()) {
    field.rho[id] =
        tree.node(id).kind == NodeKind::kDecision
            ? rho(tree, id, sigma, sigma_prime, old_eval, field.altered_reach)
            : rho_from_costs(tree, id, old_eval, field.altered_reach);
  }
  return field;
}

double delta_via_density(const GameTree& tree, const TabularPolicy& sigma,
                         const TabularPolicy& sigma_prime,
                         const DensityOptions& options) {
  const EvalCache old_eval =
      evaluate(tree, sigma, EvalOptions{.aggregates = false});
  const std::vector<double> altered =
      altered_reach_sweep(tree, sigma, sigma_prime, old_eval);
  double delta = 0.0;
  for (int i : active_set(tree, sigma, sigma_prime)) {
    for (int h : tree.infoset(i).members) {
      delta += rho(tree, h, sigma, sigma_prime, old_eval, altered, options);
    }
  }
  return delta;
}

double density_sum_all(const GameTree& tree, const TabularPolicy& sigma,
                       const TabularPolicy& sigma_prime) {
  const EvalCache old_eval =
      evaluate(tree, sigma, EvalOptions{.aggregates = false});
  const DensityField field = density_field(tree, sigma, sigma_prime, old_eval);
  double total = 0.0;
  for (int id : tree.interior_nodes()) total += field.rho[id];
  return total;
}

SubtreeDelta subtree_delta(const GameTree& tree, int h0,
                           const TabularPolicy& sigma,
                           const TabularPolicy& sigma_prime) {
  if (tree.node(h0).kind == NodeKind::kTerminal) {
    throw DomainError("subtree identity needs a non-terminal root, got node " +
                      std::to_string(h0));
  }
  const EvalOptions nodes_only{.aggregates = false};
  const EvalCache old_eval = evaluate(tree, sigma, nodes_only);
  const EvalCache new_eval = evaluate(tree, sigma_prime, nodes_only);

  SubtreeDelta out;
  out.lhs = new_eval.reach[h0] * (new_eval.value[h0] - old_eval.value[h0]);

  const DensityField field = density_field(tree, sigma, sigma_prime, old_eval);
  std::vector<int> stack{h0};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const GameNode& h = tree.node(id);
    if (h.kind == NodeKind::kTerminal) continue;
    out.rhs += field.rho[id];
    for (int c = 0; c < h.num_children; ++c) stack.push_back(h.first_child + c);
  }
  return out;
}

JSplit j_split(const GameTree& tree, int infoset, const TabularPolicy& sigma,
               const TabularPolicy& sigma_prime, double lambda) {
  const EvalCache old_eval = evaluate(tree, sigma);
  const std::vector<double> altered =
      altered_reach_sweep(tree, sigma, sigma_prime, old_eval);
  const Infoset& info = tree.infoset(infoset);
  const auto policy = sigma_prime.at(infoset);

  double expected_q = 0.0;
  for (int a = 0; a < info.num_actions(); ++a) {
    expected_q += policy[a] * old_eval.cond_q[info.action_offset + a];
  }
  const double advantage_macro = expected_q - old_eval.cond_v[infoset];

  JSplit out;
  for (int h : info.members) {
    const GameNode& node = tree.node(h);
    double expected = 0.0;
    for (int a = 0; a < node.num_children; ++a) {
      expected += policy[a] * old_eval.value[node.first_child + a];
    }
    const double advantage = expected - old_eval.value[h];
    out.j1 += (altered[h] - lambda * old_eval.reach[h]) * advantage;
    out.j2 += lambda * old_eval.reach[h] * advantage_macro;
    out.j += rho(tree, h, sigma, sigma_prime, old_eval, altered);
  }
  return out;
}

}  // namespace jps
