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

#include <span>
#include <vector>

#include "jps/evaluate.h"
#include "jps/game_tree.h"
#include "jps/policy.h"

// Policy-change cost and density for a move sigma -> sigma'.
//
//   cost(h) = (reach'(h) - reach(h)) * v(h)
//   rho(h)  = -cost(h) + sum_a cost(ha)
//           = reach'(h) * (sum_a sigma'(I, a) v(ha) - v(h))
//
// where reach/v are taken under sigma and reach' under sigma'. rho vanishes
// wherever the local policy is unchanged and sums to the change in game
// value, both over the whole tree and over the infosets whose policy changed.
namespace jps {

struct DensityOptions {
  // Fault-injection hook for negative controls: added to every nonzero rho.
  double rho_fault = 0.0;
};

struct DensityField {
  std::vector<double> rho;            // non-terminal nodes; 0 elsewhere
  std::vector<double> cost;           // every node
  std::vector<double> altered_reach;  // reach under sigma'
};

// Infosets whose vectors differ (exact comparison) between the policies.
std::vector<int> active_set(const GameTree& tree, const TabularPolicy& sigma,
                            const TabularPolicy& sigma_prime);

// Reach under sigma', reusing reach under sigma verbatim for every node
// without an active ancestor.
std::vector<double> altered_reach_sweep(const GameTree& tree,
                                        const TabularPolicy& sigma,
                                        const TabularPolicy& sigma_prime,
                                        const EvalCache& old_eval);

double cost(const GameTree& tree, int h, const EvalCache& old_eval,
            std::span<const double> altered_reach);

// Concise density at decision node h; exactly 0 when the infoset's vector is
// unchanged. Throws DomainError for chance and terminal nodes.
double rho(const GameTree& tree, int h, const TabularPolicy& sigma,
           const TabularPolicy& sigma_prime, const EvalCache& old_eval,
           std::span<const double> altered_reach,
           const DensityOptions& options = {});

// Density from its cost-difference definition; valid at any non-terminal.
double rho_from_costs(const GameTree& tree, int h, const EvalCache& old_eval,
                      std::span<const double> altered_reach);

DensityField density_field(const GameTree& tree, const TabularPolicy& sigma,
                           const TabularPolicy& sigma_prime,
                           const EvalCache& old_eval);

// Sum of rho over the members of active infosets.
double delta_via_density(const GameTree& tree, const TabularPolicy& sigma,
                         const TabularPolicy& sigma_prime,
                         const DensityOptions& options = {});

// Sum of rho over every non-terminal node.
double density_sum_all(const GameTree& tree, const TabularPolicy& sigma,
                       const TabularPolicy& sigma_prime);

// Both sides of the subtree identity at h0:
//   lhs = reach'(h0) * (v'(h0) - v(h0))        (two full evaluations)
//   rhs = sum of rho over non-terminal h below and including h0
struct SubtreeDelta {
  double lhs = 0.0;
  double rhs = 0.0;
};
SubtreeDelta subtree_delta(const GameTree& tree, int h0,
                           const TabularPolicy& sigma,
                           const TabularPolicy& sigma_prime);

// Split of J(I) = sum_{h in I} rho(h) into a per-state term J1 and a term J2
// built from the conditional infoset values V(I), Q(I, a):
//   J1 = sum_h (reach'(h) - lambda reach(h)) (sum_a sigma'(a) v(ha) - v(h))
//   J2 = lambda sum_h reach(h) (sum_a sigma'(a) Q(I, a) - V(I))
// V and Q are 0 at unreached infosets, so J2 is 0 there.
struct JSplit {
  double j1 = 0.0;
  double j2 = 0.0;
  double j = 0.0;
};
JSplit j_split(const GameTree& tree, int infoset, const TabularPolicy& sigma,
               const TabularPolicy& sigma_prime, double lambda);

}  // namespace jps
