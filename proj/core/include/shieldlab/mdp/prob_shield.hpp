#pragma once

#include <optional>

#include "shieldlab/mdp/reach.hpp"

namespace shieldlab::mdp {

enum class ThresholdMode { kRelative, kAbsolute };

// Probabilistic safety shield: action `a` is allowed at `s` when its
// optimal-continuation avoidance probability clears `lambda` relative to
// the state's optimum (relative mode) or as an absolute floor. Relative
// tables keep at least one action per state; absolute tables may empty a
// state, in which case the fallback policy applies.
struct ProbShieldTable {
  std::vector<ActionMask> allowed;
  Policy fallback{1};
  double lambda = 0;
  ThresholdMode mode = ThresholdMode::kRelative;
  int horizon = kUnboundedHorizon;

  bool is_allowed(int state, int action) const {
    return mask_has(allowed[state], action);
  }
  // The proposal when allowed, otherwise the fallback's action.
  int correct(int state, int proposal) const;
};

// Synthesizes the shield for avoiding `target` within `horizon` steps. The
// fallback defaults to the lexicographically-first maximizer of unbounded
// avoidance. Threshold comparisons are non-strict.
ProbShieldTable synth_prob_shield(const Mdp& mdp, std::vector<int> target,
                                  double lambda, int horizon,
                                  ThresholdMode mode,
                                  std::optional<Policy> fallback = std::nullopt);

}  // namespace shieldlab::mdp
