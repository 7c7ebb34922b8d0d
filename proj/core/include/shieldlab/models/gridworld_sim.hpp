#pragma once

#include "shieldlab/games/shields.hpp"
#include "shieldlab/models/gridworld.hpp"

namespace shieldlab::models {

enum class GridShieldKind { kPre, kPostRobustness, kPostControllability };

struct GridSimConfig {
  int delay = 0;
  int memory = 0;  // clamped to delay
  GridShieldKind shield = GridShieldKind::kPre;
  int steps = 2000;
  std::uint64_t seed = 0;
  double robot_epsilon = 0.2;  // exploration rate of the treasure chaser
  double kid_chase_prob = 0.7;
  int controllability_cutoff = 3;
};

struct GridSimResult {
  int score = 0;
  int interventions = 0;
  int safety_violations = 0;  // stays 0 under a correct shield
  std::vector<int> robot_cells;
};

// Plays the robot-and-kid grid under the selected delay-resilient shield:
// the kid chases stochastically, the robot chases treasures (+1 each) and
// the shield filters or overwrites its proposals.
GridSimResult simulate_gridworld(const RobotKidGrid& grid,
                                 const GridSimConfig& config);

}  // namespace shieldlab::models
