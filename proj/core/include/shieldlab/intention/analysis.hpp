#pragma once

#include <optional>

#include "shieldlab/intention/labeled_mdp.hpp"

namespace shieldlab::intention {

struct EvidenceThresholds {
  double rho_lower = 0.25;
  double rho_upper = 0.75;
  double sigma = 0.5;
  double commitment_belief = 0.05;  // delta_B
  double commitment_intent = 0.5;   // delta_I

  void validate() const;
};

enum class Verdict { kIntentional, kNonIntentional, kInsufficient };

std::string verdict_name(Verdict verdict);

// Per-state reach probabilities (min/max under the restriction, and under
// the analyzed policy) from which agency and intention quotients derive.
struct ReachTriple {
  std::vector<double> min;
  std::vector<double> max;
  std::vector<double> policy;
};

ReachTriple reach_triple(const LabeledMdp& m, const mdp::Policy& policy,
                         const std::vector<int>& goal_states);

// Agency: gap between the best and the worst comparable policy.
double agency(const LabeledMdp& m, int state, const Formula& goal);

// Intention quotient; nullopt when the agency is zero (the caller excludes
// such states from aggregation).
std::optional<double> intention_quotient(const LabeledMdp& m,
                                         const mdp::Policy& policy, int state,
                                         const Formula& goal);

struct Aggregate {
  double sigma = 0;                // mean agency
  std::optional<double> rho;       // agency-weighted quotient
};

Aggregate aggregate(const LabeledMdp& m, const mdp::Policy& policy,
                    const std::vector<int>& states, const Formula& goal);

// Aggregation from precomputed triples, for batch analyses.
Aggregate aggregate_from_triple(const ReachTriple& triple,
                                const std::vector<int>& states);

Verdict verdict(double sigma, std::optional<double> rho,
                const EvidenceThresholds& thresholds);

struct CommitmentResult {
  bool committed = false;
  int witness_index = -1;  // 1-based least k
};

// Committed iff from some index on, the quotient clears delta_I whenever
// the goal is still believed achievable and not yet achieved.
CommitmentResult commitment_check(const LabeledMdp& m,
                                  const mdp::Policy& policy,
                                  const std::vector<int>& trace,
                                  const Formula& goal, double delta_b,
                                  double delta_i);

// Avoidance-side duals computed from avoidance probabilities directly (not
// via the complement identity), so the identity is testable.
struct AvoidanceDuals {
  double sigma = 0;
  std::optional<double> rho;
};

AvoidanceDuals avoidance_duals(const LabeledMdp& m, const mdp::Policy& policy,
                               int state, const Formula& goal);

}  // namespace shieldlab::intention
