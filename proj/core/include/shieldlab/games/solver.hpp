#pragma once

#include <vector>

#include "shieldlab/games/game_graph.hpp"

namespace shieldlab::games {

// Action registers are passed oldest-first: reg[0] is the action the agent
// played at the observed state, reg.back() the most recent one. Registers
// are encoded in base |Act| with the oldest action in the least significant
// digit, so consuming the oldest action is a division and appending the
// newest a single add.
using Register = std::vector<int>;

std::size_t register_code(const Register& reg, int action_count);

// Maximally permissive strategy of a safety game under delay `delay` with
// memory `memory` (= register length in the steady phase). For delay 0 the
// table is memoryless and `winning` holds the winning region flags.
struct MaxPermStrategy {
  int delay = 0;
  int memory = 0;
  int action_count = 0;
  int agent_count = 0;

  // steady[s * |Act|^memory + code]
  std::vector<ActionMask> steady;

  // transient[k][code]: allowed actions at the unobserved state with a
  // register of length k. For memory < delay, transient[memory] holds the
  // sliding-register entries used during the remaining blind steps.
  std::vector<std::vector<ActionMask>> transient;

  // Winning-region flags, env states first then agent states. Filled for
  // every delay (layer-0 region; states outside it have all-empty entries).
  std::vector<std::uint8_t> winning;

  ActionMask steady_at(int agent_state, const Register& reg) const;
  ActionMask transient_at(const Register& reg) const;
  bool all_empty() const;

  bool env_in_winning(int env_state) const { return winning[env_state]; }
  bool agent_in_winning(int agent_state, int env_count) const {
    return winning[env_count + agent_state];
  }
};

// Perfect-information solve: winning region by greatest fixed point, table
// per Equation of the maximally permissive strategy. Runs in
// O(|S| * |Act|).
MaxPermStrategy solve_perfect_info(const GameGraph& game);

// Iterative solve for delay layers d = 0..delay with memory min(d, memory),
// intersecting successor strategies and closing each layer under Shrink.
// The game must be action-total (every action defined at every agent
// state); all bundled models are, via their no-move replacement rule.
MaxPermStrategy solve_delayed(const GameGraph& game, int delay, int memory);

// All intermediate layers (layer d solves delay d). Used by controllability
// computations that need every delay up to a cutoff.
std::vector<MaxPermStrategy> solve_delayed_layers(const GameGraph& game,
                                                  int delay, int memory);

}  // namespace shieldlab::games
