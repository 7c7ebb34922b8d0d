#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "shieldlab/rdm/trace.hpp"

namespace shieldlab::rdm {

// One decision of a shield: either the set of actions a pre-shield allows,
// or the single action a post-shield emits. A pre decision with an empty
// set is only legal when `infeasible` is set.
struct ShieldDecision {
  enum class Kind { kPre, kPost };
  Kind kind;
  ActionMask allowed = 0;  // pre
  int action = -1;         // post
  bool infeasible = false;
};

// Shields are pure functions of a history summary. In this module the
// summary is the materialized trace prefix; the game and MDP modules define
// their own summaries (registers, counters) and adapt to these signatures.
struct PreShield {
  int act_alphabet;
  std::function<ActionMask(const ObsActTrace& history, int obs)> allow;
};

struct PostShield {
  int act_alphabet;
  std::function<int(const ObsActTrace& history, int obs, int action)> correct;
};

// A (possibly stochastic) agent policy: a distribution over actions given
// the history and the current observation. Weights need not be normalized;
// the support is what matters for shield constructions.
struct AgentPolicy {
  int act_alphabet;
  std::function<std::vector<double>(const ObsActTrace& history, int obs)>
      weights;

  ActionMask support(const ObsActTrace& history, int obs) const;
};

// Position in a trace where a shield would have interfered with the agent.
struct InterferenceRecord {
  std::size_t position;
  int obs;
  int action;

  bool operator==(const InterferenceRecord&) const = default;
};

// Positions where a proposed action falls outside the pre-shield's allowed
// set. `proposals` must have one entry per trace step.
std::vector<InterferenceRecord> detect_interference(
    const PreShield& shield, const ObsActTrace& trace,
    const std::vector<int>& proposals);

// Positions where the post-shield would overwrite the proposed action.
std::vector<InterferenceRecord> detect_interference(
    const PostShield& shield, const ObsActTrace& trace,
    const std::vector<int>& proposals);

// The shield that never restricts / never overwrites.
PreShield transparent_pre_shield(int act_alphabet);
PostShield transparent_post_shield(int act_alphabet);

// Shields induced by an agent: the pre-shield allows exactly the agent's
// support; the post-shield passes supported actions and replaces the rest
// by the determinization's choice (lowest action id in the support unless a
// determinization is supplied).
struct InducedShields {
  PreShield pre;
  PostShield post;
};

InducedShields induced_shields(
    const AgentPolicy& agent,
    std::optional<std::function<int(const ObsActTrace&, int)>> determinize =
        std::nullopt);

}  // namespace shieldlab::rdm
