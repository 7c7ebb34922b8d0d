#include "shieldlab/mdp/prob_shield.hpp"

namespace shieldlab::mdp {

int ProbShieldTable::correct(int state, int proposal) const {
  if (is_allowed(state, proposal)) return proposal;
  const auto& dist = fallback.choice(state);
  if (dist.empty()) throw InfeasibleState("fallback undefined at state " +
                                          std::to_string(state));
  return dist.front().first;
}

ProbShieldTable synth_prob_shield(const Mdp& mdp, std::vector<int> target,
                                  double lambda, int horizon,
                                  ThresholdMode mode,
                                  std::optional<Policy> fallback) {
  if (lambda < 0.0 || lambda > 1.0)
    throw InvalidConfig("lambda must be in [0, 1]");
  mdp.validate();

  // Max avoidance = 1 - min reach; one continuation vector serves every
  // action-conditioned value.
  ReachQuery query;
  query.target = std::move(target);
  query.horizon = horizon;
  query.mode = OptMode::kMin;
  const std::vector<double> reach_min = reach_prob(mdp, query);

  std::vector<double> continuation;
  if (horizon == kUnboundedHorizon) {
    continuation = reach_min;
  } else {
    ReachQuery shorter = query;
    shorter.horizon = horizon - 1;
    if (shorter.horizon < 0)
      throw InvalidConfig("shield horizon must be >= 1 when bounded");
    continuation = reach_prob(mdp, shorter);
  }

  ProbShieldTable table;
  table.lambda = lambda;
  table.mode = mode;
  table.horizon = horizon;
  table.allowed.assign(mdp.state_count(), 0);
  table.fallback = Policy(mdp.state_count());

  // Threshold ties count as allowed; give the non-strict comparison slack
  // at the scale of the value-iteration tolerance.
  constexpr double kBoundarySlack = 1e-9;

  for (int s = 0; s < mdp.state_count(); ++s) {
    const double avoid_state = 1.0 - reach_min[s];
    const double bar =
        mode == ThresholdMode::kRelative ? lambda * avoid_state : lambda;
    ActionMask allowed = 0;
    int best_action = -1;
    double best_avoid = -1.0;
    for (int a = 0; a < mdp.action_count(); ++a) {
      if (!mdp.enabled(s, a)) continue;
      double reach_after = 0;
      for (const auto& e : mdp.row(s, a))
        reach_after += e.prob * continuation[e.succ];
      const double avoid_after = 1.0 - reach_after;
      if (avoid_after >= bar - kBoundarySlack) allowed |= ActionMask{1} << a;
      if (avoid_after > best_avoid) {
        best_avoid = avoid_after;
        best_action = a;
      }
    }
    // The avoidance-optimal action satisfies the relative bound by the
    // Bellman identity; keep it allowed against value-iteration noise.
    if (mode == ThresholdMode::kRelative && best_action >= 0)
      allowed |= ActionMask{1} << best_action;
    table.allowed[s] = allowed;
    table.fallback.set_deterministic(s, best_action);
  }

  if (fallback.has_value()) {
    fallback->validate(mdp);
    table.fallback = *std::move(fallback);
  }
  return table;
}

}  // namespace shieldlab::mdp
