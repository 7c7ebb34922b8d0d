#pragma once

#include "shieldlab/games/game_graph.hpp"

namespace shieldlab::models {

// Crossing games: the ego car (agent) and either another car or a
// pedestrian (environment) approach the same crossing. Positions are
// distances to the crossing on a step-2 grid, velocities integer m/s, and
// each game step spans dt seconds with accelerate/brake applying +-accel
// m/s^2. Position updates round toward the crossing.
struct CrossingSpec {
  int p_max = 100;   // positions {0, 2, ..., p_max}
  int p_step = 2;
  int v_max = 20;    // velocities {0, ..., v_max}
  double dt = 0.5;
  double accel = 2.0;
};

enum class CrossingVariant { kCarCar, kCarPedestrian };

// Ego actions, in id order.
enum CrossingAction { kAccelerate = 0, kBrake = 1, kCoast = 2 };

struct CrossingGame {
  CrossingSpec spec;
  CrossingVariant variant = CrossingVariant::kCarCar;
  games::GameGraph game{1, 1, 1};

  int positions = 0;   // ego/env-car position grid size
  int velocities = 0;
  int ped_positions = 0;  // pedestrian grid (step 1), car-pedestrian only

  int pos_index(int p) const { return p / spec.p_step; }

  // car-car: (p_ag, v_ag, p_env, v_env); car-pedestrian: (p_ag, v_ag, p_ped).
  int car_car_state(int pi_ag, int v_ag, int pi_env, int v_env) const {
    return ((pi_ag * velocities + v_ag) * positions + pi_env) * velocities +
           v_env;
  }
  int car_ped_state(int pi_ag, int v_ag, int p_ped) const {
    return (pi_ag * velocities + v_ag) * ped_positions + p_ped;
  }
};

CrossingGame build_crossing_game(const CrossingSpec& spec,
                                 CrossingVariant variant);

}  // namespace shieldlab::models
