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

#include "jps/jps.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <omp.h>

#include "jps/errors.h"

namespace jps {
namespace {

bool lex_less(const std::vector<ChainLink>& a, const std::vector<ChainLink>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](const ChainLink& x, const ChainLink& y) {
        return x.infoset != y.infoset ? x.infoset < y.infoset
                                      : x.action < y.action;
      });
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t iteration,
                           std::uint64_t head) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(iteration),
                    static_cast<std::uint32_t>(head)};
  return std::mt19937_64(seq);
}

void check_config(const JpsConfig& config) {
  if (config.max_depth < 0 || config.max_iterations < 0 ||
      config.samples_per_infoset < 0 || config.num_threads < 1) {
    throw DomainError("invalid search configuration");
  }
}

// better_proposal for the chain {link} + tail without building it.
bool prefix_beats(double score, const ChainLink& link,
                  const std::vector<ChainLink>& tail,
                  const ScoredProposal& best) {
  if (score > best.score + kScoreTieTolerance) return true;
  if (score < best.score - kScoreTieTolerance) return false;
  const int depth = 1 + static_cast<int>(tail.size());
  if (depth != best.proposal.depth()) return depth < best.proposal.depth();
  const ChainLink& first = best.proposal.chain.front();
  if (link.infoset != first.infoset) return link.infoset < first.infoset;
  if (link.action != first.action) return link.action < first.action;
  return std::lexicographical_compare(
      tail.begin(), tail.end(), best.proposal.chain.begin() + 1,
      best.proposal.chain.end(), [](const ChainLink& x, const ChainLink& y) {
        return x.infoset != y.infoset ? x.infoset < y.infoset
                                      : x.action < y.action;
      });
}

// Depth-first chain search over one public path. At recursion level k,
// live_[k] lists the deals whose node at the searched public state still has
// nonzero reach under the chain fixed so far, and alt_[k][d] is that reach.
// Deals outside the list contribute nothing, so only they are touched.
class Searcher {
 public:
  Searcher(const GameTree& tree, const TabularPolicy& sigma,
           const EvalCache& eval, const JpsConfig& config)
      : tree_(tree), sigma_(sigma), eval_(eval), config_(config) {
    // Buffers are sized up front: references into them live across the
    // recursion.
    const int levels = std::min(config.max_depth, tree.num_levels()) + 1;
    alt_.assign(levels, std::vector<double>(tree.num_deals(), 0.0));
    live_.resize(levels);
    mine_.resize(levels);
    gains_.resize(levels);
  }

  // Seeds level 0 at public state p with the given per-deal reach.
  template <typename ReachOf>
  void seed(int p, ReachOf&& reach_of) {
    live_[0].clear();
    for (int d = 0; d < tree_.num_deals(); ++d) {
      const int h = tree_.node_at(p, d);
      const double r = h < 0 ? 0.0 : reach_of(h);
      alt_[0][d] = r;
      if (r != 0.0) live_[0].push_back(d);
    }
  }

  ScoredProposal score_head(int head, std::mt19937_64* rng) {
    const int p = tree_.infoset(head).public_state;
    seed(p, [&](int h) { return eval_.reach[h]; });
    const int candidates[] = {head};
    return search(p, candidates, 0, 0, rng);
  }

  ScoredProposal search(int p, std::span<const int> candidates, int depth,
                        int level, std::mt19937_64* rng) {
    ScoredProposal best;
    if (depth >= config_.max_depth) return best;
    const PublicState& ps = tree_.public_state(p);

    for (int i : candidates) {
      const Infoset& info = tree_.infoset(i);
      std::vector<int>& mine = mine_[level];
      mine.clear();
      for (int d : live_[level]) {
        if (tree_.node(tree_.node_at(p, d)).infoset == i) mine.push_back(d);
      }
      // Nothing below a zero-reach infoset can move the value.
      if (mine.empty()) continue;

      std::vector<double>& gain = gains_[level];
      gain.assign(static_cast<std::size_t>(info.num_actions()), 0.0);
      accumulate_gain(p, info, level, gain, rng);
      const int hot = sigma_.one_hot_action(i);
      if (hot >= 0) gain[hot] = 0.0;

      for (int a = 0; a < info.num_actions(); ++a) {
        const ChainLink link{i, a};
        double score = gain[a];
        ScoredProposal tail;
        const int next = ps.children[a];
        if (depth + 1 < config_.max_depth &&
            !tree_.public_state(next).terminal) {
          std::vector<int> succ;
          for (int d : mine_[level]) {
            succ.push_back(tree_.node(tree_.node_at(next, d)).infoset);
          }
          std::sort(succ.begin(), succ.end());
          succ.erase(std::unique(succ.begin(), succ.end()), succ.end());

          const std::vector<double>& above = alt_[level];
          std::vector<double>& below = alt_[level + 1];
          std::vector<int>& live = live_[level + 1];
          live.clear();
          for (int d : live_[level]) {
            const int j = tree_.node(tree_.node_at(p, d)).infoset;
            const double r = j == i ? above[d] : above[d] * sigma_.prob(j, a);
            if (r != 0.0) {
              below[d] = r;
              live.push_back(d);
            }
          }
          tail = search(next, succ, depth + 1, level + 1, rng);
          score += tail.score;
        }
        // The chain is only materialized when it wins.
        if (prefix_beats(score, link, tail.proposal.chain, best)) {
          best.score = score;
          best.proposal.chain.assign(1, link);
          best.proposal.chain.insert(best.proposal.chain.end(),
                                     tail.proposal.chain.begin(),
                                     tail.proposal.chain.end());
        }
      }
    }
    return best;
  }

 private:
  void accumulate_gain(int p, const Infoset& info, int level,
                       std::vector<double>& gain, std::mt19937_64* rng) {
    const std::vector<double>& reach = alt_[level];
    auto add = [&](int h, double r) {
      const GameNode& n = tree_.node(h);
      const double vh = eval_.value[h];
      for (int a = 0; a < n.num_children; ++a) {
        gain[a] += r * (eval_.value[n.first_child + a] - vh);
      }
    };
    const int m = config_.samples_per_infoset;
    const int size = static_cast<int>(info.members.size());
    if (m == 0 || (config_.enumerate_when_covered && m >= size)) {
      for (int d : mine_[level]) add(tree_.node_at(p, d), reach[d]);
      return;
    }
    // Draws range over all members; zero-reach draws add nothing.
    std::uniform_int_distribution<int> pick(0, size - 1);
    for (int k = 0; k < m; ++k) {
      const int h = info.members[pick(*rng)];
      const int d = tree_.node(h).deal;
      if (std::binary_search(mine_[level].begin(), mine_[level].end(), d)) {
        add(h, reach[d]);
      }
    }
  }

  const GameTree& tree_;
  const TabularPolicy& sigma_;
  const EvalCache& eval_;
  const JpsConfig& config_;
  std::vector<std::vector<double>> alt_;
  std::vector<std::vector<int>> live_;
  std::vector<std::vector<int>> mine_;
  std::vector<std::vector<double>> gains_;
};

// Best proposal over `heads` with sigma's cache. Heads are scored in
// parallel; the reduction runs in head order so the result never depends on
// scheduling.
ScoredProposal best_over_heads(const GameTree& tree, const TabularPolicy& sigma,
                               const EvalCache& eval, const JpsConfig& config,
                               std::span<const int> heads, int iteration) {
  std::vector<ScoredProposal> scored(heads.size());
  const bool sampled = config.samples_per_infoset > 0;
  const int n = static_cast<int>(heads.size());
#pragma omp parallel num_threads(config.num_threads) if (config.num_threads > 1)
  {
    Searcher searcher(tree, sigma, eval, config);
#pragma omp for schedule(dynamic, 8)
    for (int k = 0; k < n; ++k) {
      if (sampled) {
        std::mt19937_64 rng = stream_rng(config.rng_seed, iteration, heads[k]);
        scored[k] = searcher.score_head(heads[k], &rng);
      } else {
        scored[k] = searcher.score_head(heads[k], nullptr);
      }
    }
  }
  ScoredProposal best;
  for (ScoredProposal& s : scored) {
    if (better_proposal(s, best)) best = std::move(s);
  }
  return best;
}

void check_chain(const GameTree& tree, const ActiveSetProposal& proposal) {
  for (std::size_t k = 0; k < proposal.chain.size(); ++k) {
    const ChainLink& link = proposal.chain[k];
    if (link.infoset < 0 || link.infoset >= tree.num_infosets() ||
        link.action < 0 ||
        link.action >= tree.infoset(link.infoset).num_actions()) {
      throw DomainError("chain link out of range");
    }
    if (k == 0) continue;
    const ChainLink& prev = proposal.chain[k - 1];
    const std::vector<int> succ = successors(tree, prev.infoset, prev.action);
    if (!std::binary_search(succ.begin(), succ.end(), link.infoset)) {
      throw DomainError("chain link " + std::to_string(k) +
                        " is not a successor of its predecessor");
    }
  }
}

}  // namespace

bool better_proposal(const ScoredProposal& a, const ScoredProposal& b,
                     double tol) {
  if (a.score > b.score + tol) return true;
  if (a.score < b.score - tol) return false;
  if (a.proposal.depth() != b.proposal.depth()) {
    return a.proposal.depth() < b.proposal.depth();
  }
  return lex_less(a.proposal.chain, b.proposal.chain);
}

std::vector<int> successors(const GameTree& tree, int infoset,
                            int action_index) {
  std::vector<int> out;
  for (int h : tree.infoset(infoset).members) {
    const GameNode& child = tree.node(tree.node(h).first_child + action_index);
    if (child.kind == NodeKind::kDecision) out.push_back(child.infoset);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> chain_heads(const GameTree& tree) {
  std::vector<int> heads;
  for (const Infoset& info : tree.infosets()) {
    if (info.num_actions() > 1) heads.push_back(info.id);
  }
  return heads;
}

TabularPolicy materialize(const GameTree& tree, const TabularPolicy& sigma,
                          const ActiveSetProposal& proposal) {
  check_chain(tree, proposal);
  TabularPolicy out = sigma;
  for (const ChainLink& link : proposal.chain) {
    out.set_one_hot(link.infoset, link.action);
  }
  return out;
}

double altered_reach(const GameTree& tree, int h, const TabularPolicy& sigma,
                     const ActiveSetProposal& proposal,
                     const EvalCache& old_eval) {
  std::vector<int> path;
  for (int n = h; n >= 0; n = tree.node(n).parent) path.push_back(n);
  std::reverse(path.begin(), path.end());

  auto forced = [&](int infoset) {
    for (const ChainLink& link : proposal.chain) {
      if (link.infoset == infoset) return link.action;
    }
    return -1;
  };
  // Above the first forced edge the reach is unchanged; copying it keeps the
  // result bitwise equal to the sweep there.
  bool altered = false;
  double r = 1.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const GameNode& parent = tree.node(path[k - 1]);
    const int idx = tree.node(path[k]).action_index;
    const int f = parent.kind == NodeKind::kDecision ? forced(parent.infoset) : -1;
    if (!altered && f < 0) {
      r = old_eval.reach[path[k]];
      continue;
    }
    altered = true;
    if (f >= 0) {
      r *= f == idx ? 1.0 : 0.0;
    } else if (parent.kind == NodeKind::kChance) {
      r *= tree.deal(idx).probability;
    } else {
      r *= sigma.prob(parent.infoset, idx);
    }
  }
  return r;
}

ScoredProposal jps_search(const GameTree& tree, const TabularPolicy& sigma,
                          const EvalCache& old_eval,
                          std::span<const int> candidates,
                          const ActiveSetProposal& upstream,
                          const JpsConfig& config) {
  check_config(config);
  check_chain(tree, upstream);
  if (candidates.empty()) return {};
  const int p = tree.infoset(candidates.front()).public_state;
  for (int i : candidates) {
    if (tree.infoset(i).public_state != p) {
      throw DomainError("search candidates must share a public state");
    }
  }
  Searcher searcher(tree, sigma, old_eval, config);
  searcher.seed(p, [&](int h) {
    return altered_reach(tree, h, sigma, upstream, old_eval);
  });
  std::mt19937_64 rng(config.rng_seed);
  return searcher.search(p, candidates, upstream.depth(), 0, &rng);
}

JpsResult jps_main(const GameTree& tree, const TabularPolicy& sigma,
                   const JpsConfig& config) {
  check_config(config);
  if (config.samples_per_infoset > 0) {
    throw DomainError("jps_main is exact; use sampled_jps for m > 0");
  }
  JpsResult result;
  result.policy = sigma;
  const std::vector<int> heads = chain_heads(tree);
  std::size_t cursor = 0;

  EvalCache eval = evaluate(tree, result.policy, {.aggregates = false});
  for (int it = 0; it < config.max_iterations; ++it) {
    const double before = eval.root_value();
    ScoredProposal best;
    if (config.start_selection == StartSelection::kAll) {
      best = best_over_heads(tree, result.policy, eval, config, heads, it);
    } else {
      Searcher searcher(tree, result.policy, eval, config);
      for (std::size_t tried = 0; tried < heads.size(); ++tried) {
        const int head = heads[cursor];
        cursor = (cursor + 1) % heads.size();
        best = searcher.score_head(head, nullptr);
        if (best.score > config.improvement_epsilon) break;
      }
    }
    if (!(best.score > config.improvement_epsilon)) break;

    // The fresh evaluation doubles as the cache of the next iteration.
    TabularPolicy next = materialize(tree, result.policy, best.proposal);
    eval = evaluate(tree, next, {.aggregates = false});
    const double after = eval.root_value();
    if (std::abs((after - before) - best.score) > 1e-9) {
      throw std::logic_error("search score " + std::to_string(best.score) +
                             " disagrees with value change " +
                             std::to_string(after - before));
    }
    if (after < before) {
      throw std::logic_error("exact search decreased the game value");
    }
    result.trace.push_back({before, best.score, after, best.proposal});
    result.policy = std::move(next);
    ++result.iterations;
  }
  result.value = eval.root_value();
  return result;
}

JpsResult sampled_jps(const GameTree& tree, const TabularPolicy& sigma,
                      const JpsConfig& config) {
  check_config(config);
  if (config.samples_per_infoset < 1) {
    throw DomainError("sampled_jps needs samples_per_infoset >= 1");
  }
  const std::vector<int> heads = chain_heads(tree);
  TabularPolicy current = sigma;
  JpsResult result;
  result.policy = sigma;

  EvalCache eval = evaluate(tree, current, {.aggregates = false});
  // The starting policy competes too: a bad sampled step is never forced.
  result.value = eval.root_value();
  for (int it = 0; it < config.max_iterations; ++it) {
    const double before = eval.root_value();
    const ScoredProposal best =
        best_over_heads(tree, current, eval, config, heads, it);
    if (best.score > config.improvement_epsilon) {
      current = materialize(tree, current, best.proposal);
      eval = evaluate(tree, current, {.aggregates = false});
    }
    const double after = eval.root_value();
    result.trace.push_back({before, best.score, after, best.proposal});
    ++result.iterations;
    if (!config.best_over_iterations || after > result.value) {
      result.value = after;
      result.policy = current;
    }
  }
  return result;
}

JpsResult brute_force_improve(const GameTree& tree, const TabularPolicy& sigma,
                              const JpsConfig& config) {
  check_config(config);
  JpsResult result;
  result.policy = sigma;
  const std::vector<int> heads = chain_heads(tree);

  for (int it = 0; it < config.max_iterations; ++it) {
    const double before = game_value(tree, result.policy);
    TabularPolicy work = result.policy;
    std::vector<ChainLink> chain;
    ScoredProposal best;

    auto visit = [&](auto&& self, int infoset) -> void {
      const std::vector<double> saved(work.at(infoset).begin(),
                                      work.at(infoset).end());
      for (int a = 0; a < static_cast<int>(saved.size()); ++a) {
        work.set_one_hot(infoset, a);
        chain.push_back({infoset, a});
        ScoredProposal cand{game_value(tree, work) - before, {chain}};
        if (better_proposal(cand, best)) best = std::move(cand);
        if (static_cast<int>(chain.size()) < config.max_depth) {
          for (int next : successors(tree, infoset, a)) self(self, next);
        }
        chain.pop_back();
      }
      std::copy(saved.begin(), saved.end(), work.at(infoset).begin());
    };
    if (config.max_depth > 0) {
      for (int head : heads) visit(visit, head);
    }
    if (!(best.score > config.improvement_epsilon)) break;

    TabularPolicy next = materialize(tree, result.policy, best.proposal);
    const double after = game_value(tree, next);
    result.trace.push_back({before, best.score, after, best.proposal});
    result.policy = std::move(next);
    ++result.iterations;
  }
  result.value = game_value(tree, result.policy);
  return result;
}

namespace {

// Dynamic program over (public state, set of deals still consistent with the
// choices made above). At each public state the actor's live infosets each
// pick one action; the deals then split by action into the child states.
class ExhaustiveSolver {
 public:
  ExhaustiveSolver(const GameTree& tree, std::int64_t cap)
      : tree_(tree), cap_(cap), deal_mask_(tree.num_infosets(), 0) {
    if (tree.num_deals() > 64) {
      throw SizeError("exhaustive search supports at most 64 deals, got " +
                      std::to_string(tree.num_deals()));
    }
    for (const Infoset& info : tree.infosets()) {
      for (int h : info.members) {
        deal_mask_[info.id] |= std::uint64_t{1} << tree.node(h).deal;
      }
    }
  }

  double solve(int p, std::uint64_t live) {
    const PublicState& ps = tree_.public_state(p);
    if (live == 0) return 0.0;
    if (ps.terminal) {
      double total = 0.0;
      for (int d = 0; d < tree_.num_deals(); ++d) {
        if (live >> d & 1) {
          total += tree_.deal(d).probability *
                   tree_.node(tree_.node_at(p, d)).reward;
        }
      }
      return total;
    }
    const Key key{p, live};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

    std::vector<int> groups;
    std::vector<std::uint64_t> masks;
    for (int i : ps.infosets) {
      const std::uint64_t m = deal_mask_[i] & live;
      if (m != 0) {
        groups.push_back(i);
        masks.push_back(m);
      }
    }
    const int num_actions = static_cast<int>(ps.children.size());
    std::vector<int> choice(groups.size(), 0);
    std::vector<std::uint64_t> split(num_actions);
    Entry best{-INFINITY, {}};
    while (true) {
      if (++candidates_ > cap_) {
        throw SizeError("exhaustive search exceeds " + std::to_string(cap_) +
                        " candidate assignments");
      }
      std::fill(split.begin(), split.end(), 0);
      for (std::size_t g = 0; g < groups.size(); ++g) split[choice[g]] |= masks[g];
      double total = 0.0;
      for (int a = 0; a < num_actions; ++a) {
        if (split[a] != 0) total += solve(ps.children[a], split[a]);
      }
      if (total > best.value) best = {total, choice};
      std::size_t g = 0;
      while (g < choice.size() && ++choice[g] == num_actions) choice[g++] = 0;
      if (g == choice.size()) break;
    }
    memo_.emplace(key, best);
    return best.value;
  }

  // Writes the argmax assignment of every reachable (state, deal set).
  void extract(int p, std::uint64_t live, TabularPolicy& out) {
    const PublicState& ps = tree_.public_state(p);
    if (live == 0 || ps.terminal) return;
    const Entry& e = memo_.at(Key{p, live});
    std::vector<std::uint64_t> split(ps.children.size(), 0);
    std::size_t g = 0;
    for (int i : ps.infosets) {
      const std::uint64_t m = deal_mask_[i] & live;
      if (m == 0) continue;
      out.set_one_hot(i, e.choice[g]);
      split[e.choice[g]] |= m;
      ++g;
    }
    for (std::size_t a = 0; a < split.size(); ++a) {
      extract(ps.children[a], split[a], out);
    }
  }

  std::int64_t candidates() const { return candidates_; }

 private:
  struct Key {
    int p;
    std::uint64_t live;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>()(k.live * 0x9e3779b97f4a7c15ULL ^
                                        static_cast<std::uint64_t>(k.p));
    }
  };
  struct Entry {
    double value;
    std::vector<int> choice;
  };

  const GameTree& tree_;
  std::int64_t cap_;
  std::int64_t candidates_ = 0;
  std::vector<std::uint64_t> deal_mask_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
};

}  // namespace

ExhaustiveResult exhaustive_optimal(const GameTree& tree,
                                    std::int64_t max_candidates) {
  ExhaustiveSolver solver(tree, max_candidates);
  const int n = tree.num_deals();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << n) - 1;
  // The root public state is the first child of the chance root.
  const int p0 = tree.node(tree.node(tree.root()).first_child).public_state;
  ExhaustiveResult result;
  solver.solve(p0, all);
  result.policy = TabularPolicy::constant(tree, 0);
  solver.extract(p0, all, result.policy);
  result.value = game_value(tree, result.policy);
  result.candidates = solver.candidates();
  return result;
}

}  // namespace jps
