#include "shieldlab/intention/analysis.hpp"

namespace shieldlab::intention {

void EvidenceThresholds::validate() const {
  if (!(rho_lower >= 0.0) || !(rho_lower < rho_upper) || !(rho_upper <= 1.0))
    throw InvalidConfig("need 0 <= rho_lower < rho_upper <= 1");
  if (!(sigma > 0.0) || !(sigma < 1.0))
    throw InvalidConfig("need sigma threshold in (0, 1)");
  if (!(commitment_belief > 0.0) || !(commitment_belief < 1.0) ||
      !(commitment_intent > 0.0) || !(commitment_intent < 1.0))
    throw InvalidConfig("commitment thresholds must be in (0, 1)");
}

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::kIntentional:
      return "intentional";
    case Verdict::kNonIntentional:
      return "non-intentional";
    case Verdict::kInsufficient:
      return "insufficient";
  }
  return "?";
}

ReachTriple reach_triple(const LabeledMdp& m, const mdp::Policy& policy,
                         const std::vector<int>& goal_states) {
  mdp::ReachQuery query;
  query.target = goal_states;
  query.restriction = m.restriction();

  ReachTriple t;
  query.mode = mdp::OptMode::kMin;
  t.min = mdp::reach_prob(m.base(), query);
  query.mode = mdp::OptMode::kMax;
  t.max = mdp::reach_prob(m.base(), query);
  query.mode = mdp::OptMode::kPolicy;
  query.policy = &policy;
  query.restriction = nullptr;
  t.policy = mdp::reach_prob(m.base(), query);
  return t;
}

namespace {
// Agency below this floor counts as zero: value iteration runs at 1e-10
// tolerance, so smaller gaps are numeric noise.
constexpr double kAgencyFloor = 1e-9;
}  // namespace

double agency(const LabeledMdp& m, int state, const Formula& goal) {
  mdp::Policy dummy(m.base().state_count());
  for (int s = 0; s < m.base().state_count(); ++s)
    dummy.set_deterministic(s, mask_lowest(m.base().enabled_actions(s)));
  const ReachTriple t = reach_triple(m, dummy, m.states_of(goal));
  return t.max[state] - t.min[state];
}

std::optional<double> intention_quotient(const LabeledMdp& m,
                                         const mdp::Policy& policy, int state,
                                         const Formula& goal) {
  const ReachTriple t = reach_triple(m, policy, m.states_of(goal));
  const double sigma = t.max[state] - t.min[state];
  if (sigma <= kAgencyFloor) return std::nullopt;
  return (t.policy[state] - t.min[state]) / sigma;
}

Aggregate aggregate_from_triple(const ReachTriple& triple,
                                const std::vector<int>& states) {
  if (states.empty()) throw InvalidInput("aggregation over an empty set");
  double sigma_sum = 0;
  double weighted = 0;
  double weight = 0;
  for (int s : states) {
    const double sigma = triple.max[s] - triple.min[s];
    sigma_sum += sigma;
    if (sigma > kAgencyFloor) {
      weighted += sigma * (triple.policy[s] - triple.min[s]) / sigma;
      weight += sigma;
    }
  }
  Aggregate agg;
  agg.sigma = sigma_sum / static_cast<double>(states.size());
  if (weight > 0) agg.rho = weighted / weight;
  return agg;
}

Aggregate aggregate(const LabeledMdp& m, const mdp::Policy& policy,
                    const std::vector<int>& states, const Formula& goal) {
  return aggregate_from_triple(reach_triple(m, policy, m.states_of(goal)),
                               states);
}

Verdict verdict(double sigma, std::optional<double> rho,
                const EvidenceThresholds& thresholds) {
  thresholds.validate();
  if (!rho.has_value() || sigma < thresholds.sigma)
    return Verdict::kInsufficient;
  if (*rho >= thresholds.rho_upper) return Verdict::kIntentional;
  if (*rho <= thresholds.rho_lower) return Verdict::kNonIntentional;
  return Verdict::kInsufficient;
}

CommitmentResult commitment_check(const LabeledMdp& m,
                                  const mdp::Policy& policy,
                                  const std::vector<int>& trace,
                                  const Formula& goal, double delta_b,
                                  double delta_i) {
  if (trace.empty()) throw InvalidInput("empty trace");
  const ReachTriple t = reach_triple(m, policy, m.states_of(goal));

  auto complies = [&](int s) {
    const bool guard =
        t.max[s] > delta_b && t.min[s] < 1.0 - delta_b;
    if (!guard) return true;
    const double sigma = t.max[s] - t.min[s];
    // Undefined quotient under an active guard counts as zero.
    const double rho =
        sigma > kAgencyFloor ? (t.policy[s] - t.min[s]) / sigma : 0.0;
    return rho >= delta_i;
  };

  // Least k such that the whole suffix complies.
  int k = static_cast<int>(trace.size()) + 1;
  for (int i = static_cast<int>(trace.size()) - 1; i >= 0; --i) {
    if (complies(trace[i]))
      k = i + 1;
    else
      break;
  }
  CommitmentResult result;
  result.committed = k <= static_cast<int>(trace.size());
  result.witness_index = result.committed ? k : -1;
  return result;
}

AvoidanceDuals avoidance_duals(const LabeledMdp& m, const mdp::Policy& policy,
                               int state, const Formula& goal) {
  mdp::ReachQuery query;
  query.target = m.states_of(goal);
  query.restriction = m.restriction();

  query.mode = mdp::OptMode::kMax;  // maximal avoidance
  const std::vector<double> avoid_max = mdp::avoid_prob(m.base(), query);
  query.mode = mdp::OptMode::kMin;
  const std::vector<double> avoid_min = mdp::avoid_prob(m.base(), query);
  query.mode = mdp::OptMode::kPolicy;
  query.policy = &policy;
  query.restriction = nullptr;
  const std::vector<double> avoid_pol = mdp::avoid_prob(m.base(), query);

  AvoidanceDuals duals;
  duals.sigma = avoid_max[state] - avoid_min[state];
  if (duals.sigma > kAgencyFloor)
    duals.rho = (avoid_pol[state] - avoid_min[state]) / duals.sigma;
  return duals;
}

}  // namespace shieldlab::intention
