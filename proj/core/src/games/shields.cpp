#include "shieldlab/games/shields.hpp"

namespace shieldlab::games {

GamePreShield::GamePreShield(MaxPermStrategy strategy)
    : strategy_(std::move(strategy)) {}

ActionMask GamePreShield::allowed(int agent_state, const Register& reg) const {
  const ActionMask m = strategy_.steady_at(agent_state, reg);
  if (m == 0)
    throw InfeasibleState("no allowed action at the queried state/register");
  return m;
}

ActionMask GamePreShield::allowed_transient(const Register& reg) const {
  const ActionMask m = strategy_.transient_at(reg);
  if (m == 0) throw InfeasibleState("no allowed action in the blind phase");
  return m;
}

GamePostShield::GamePostShield(MaxPermStrategy strategy,
                               Determinization determinization)
    : strategy_(std::move(strategy)), det_(std::move(determinization)) {}

ActionMask GamePostShield::allowed(int agent_state, const Register& reg) const {
  return strategy_.steady_at(agent_state, reg);
}

int GamePostShield::correct(int agent_state, const Register& reg,
                            int proposal) const {
  const ActionMask m = strategy_.steady_at(agent_state, reg);
  if (m == 0)
    throw InfeasibleState("no allowed action at the queried state/register");
  if (mask_has(m, proposal)) return proposal;
  return det_.at(agent_state, reg);
}

ExtractedShields extract_shields(const MaxPermStrategy& strategy,
                                 const Determinization& determinization) {
  const int na = strategy.agent_count;
  const std::size_t regs = strategy.steady.size() / na;
  for (std::size_t i = 0; i < strategy.steady.size(); ++i) {
    const int pick = determinization.choice[i];
    if (strategy.steady[i] == 0) continue;
    if (pick < 0 || !mask_has(strategy.steady[i], pick))
      throw InvalidInput(
          "determinization is inconsistent with the strategy at entry " +
          std::to_string(i / regs));
  }
  return {GamePreShield(strategy), GamePostShield(strategy, determinization)};
}

}  // namespace shieldlab::games
