#pragma once

#include <optional>
#include <vector>

#include "shieldlab/mdp/mdp.hpp"

namespace shieldlab::mdp {

constexpr int kUnboundedHorizon = -1;

enum class OptMode { kMin, kMax, kPolicy };

// Reachability query. `restriction` optionally limits the actions ranged
// over by min/max modes (the policy set Pi as per-state allowed-action
// masks); every restricted state must keep at least one enabled action.
struct ReachQuery {
  std::vector<int> target;
  int horizon = kUnboundedHorizon;
  OptMode mode = OptMode::kMax;
  const Policy* policy = nullptr;
  const std::vector<ActionMask>* restriction = nullptr;
  double tolerance = 1e-10;
  long max_sweeps = 1000000;
};

// Reachability probability per state. Bounded horizons use the exact
// k-step dynamic program; unbounded queries first compute the prob-0 and
// prob-1 state sets graph-theoretically (so boundary values are exact) and
// then run value iteration on the remainder.
std::vector<double> reach_prob(const Mdp& mdp, const ReachQuery& query);

// Probability after committing to action `a` in state `s`: the transition
// row folded with the continuation values (horizon reduced by one step for
// bounded queries).
double reach_prob_after_action(const Mdp& mdp, int state, int action,
                               const ReachQuery& query);

// Complement probabilities; min/max modes swap through the complement
// (maximal avoidance corresponds to minimal reachability).
std::vector<double> avoid_prob(const Mdp& mdp, const ReachQuery& query);
double avoid_prob_after_action(const Mdp& mdp, int state, int action,
                               const ReachQuery& query);

}  // namespace shieldlab::mdp
