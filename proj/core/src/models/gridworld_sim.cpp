#include "shieldlab/models/gridworld_sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

namespace shieldlab::models {

namespace {

int manhattan(std::pair<int, int> a, std::pair<int, int> b) {
  return std::abs(a.first - b.first) + std::abs(a.second - b.second);
}

// Net landing cell of a robot action, honoring wall blocking.
int robot_target(const RobotKidGrid& grid, int robot_cell, int action) {
  auto [x, y] = grid.cells[robot_cell];
  for (const auto& [dx, dy] : RobotKidGrid::robot_moves()[action]) {
    x += dx;
    y += dy;
    if (!grid.legal(x, y)) return robot_cell;
  }
  return grid.cell(x, y);
}

}  // namespace

GridSimResult simulate_gridworld(const RobotKidGrid& grid,
                                 const GridSimConfig& config) {
  const int delay = config.delay;
  const int memory = std::min(config.memory, delay);
  const int actions = grid.game.action_count();

  games::MaxPermStrategy strategy =
      games::solve_delayed(grid.game, delay, memory);
  if (strategy.all_empty())
    throw InvalidConfig("gridworld is not winnable at this delay/memory");

  games::Determinization det;
  if (config.shield != GridShieldKind::kPre) {
    const games::FitnessTable fitness =
        config.shield == GridShieldKind::kPostRobustness
            ? games::robustness_values(grid.game)
            : games::controllability_values(grid.game, memory,
                                            config.controllability_cutoff);
    det = games::determinize_max_fitness(strategy, fitness, grid.game);
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_cell = [&] {
    std::uniform_int_distribution<int> pick(0, grid.cell_count() - 1);
    return pick(rng);
  };

  // Start from the game's initial state: kid to move first.
  auto [kid, robot] = grid.split_state(grid.game.initial());
  int treasure = random_cell();

  GridSimResult result;
  std::deque<int> observations;  // agent states, oldest first
  games::Register reg;           // last `memory` robot actions

  for (int step = 0; step < config.steps; ++step) {
    // Kid move: chase with probability kid_chase_prob, else wander.
    {
      const auto [kx, ky] = grid.cells[kid];
      std::vector<int> candidates;
      for (const auto& [dx, dy] :
           {std::pair{0, 1}, std::pair{0, -1}, std::pair{1, 0},
            std::pair{-1, 0}}) {
        candidates.push_back(grid.legal(kx + dx, ky + dy)
                                 ? grid.cell(kx + dx, ky + dy)
                                 : kid);
      }
      if (unit(rng) < config.kid_chase_prob) {
        int best = candidates[0];
        for (int c : candidates)
          if (manhattan(grid.cells[c], grid.cells[robot]) <
              manhattan(grid.cells[best], grid.cells[robot]))
            best = c;
        kid = best;
      } else {
        std::uniform_int_distribution<int> pick(0, 3);
        kid = candidates[pick(rng)];
      }
    }
    if (kid == robot) {
      ++result.safety_violations;
    }

    const int current = grid.agent_state(kid, robot);
    observations.push_back(current);

    // Allowed set: steady entry once the first observation arrived,
    // transient entry during the blind phase.
    ActionMask allowed;
    const int seen = static_cast<int>(observations.size());
    if (seen > delay) {
      const int observed = observations[seen - 1 - delay];
      allowed = strategy.steady_at(observed, reg);
    } else {
      allowed = strategy.transient_at(reg);
    }
    if (allowed == 0)
      throw InfeasibleState("play reached an empty strategy entry");

    // Robot proposal: epsilon-greedy treasure chase.
    int proposal;
    if (unit(rng) < config.robot_epsilon) {
      std::uniform_int_distribution<int> pick(0, actions - 1);
      proposal = pick(rng);
    } else {
      proposal = 0;
      int best_dist = manhattan(grid.cells[robot_target(grid, robot, 0)],
                                grid.cells[treasure]);
      for (int a = 1; a < actions; ++a) {
        const int dist = manhattan(grid.cells[robot_target(grid, robot, a)],
                                   grid.cells[treasure]);
        if (dist < best_dist) {
          best_dist = dist;
          proposal = a;
        }
      }
    }

    int played;
    if (config.shield == GridShieldKind::kPre) {
      if (mask_has(allowed, proposal)) {
        played = proposal;
      } else {
        ++result.interventions;
        // The pre-shield-ready robot re-optimizes inside the allowed set.
        played = -1;
        int best_dist = 0;
        for (int a : mask_to_actions(allowed)) {
          const int dist = manhattan(grid.cells[robot_target(grid, robot, a)],
                                     grid.cells[treasure]);
          if (played == -1 || dist < best_dist) {
            best_dist = dist;
            played = a;
          }
        }
      }
    } else {
      if (mask_has(allowed, proposal)) {
        played = proposal;
      } else {
        ++result.interventions;
        if (seen > delay) {
          const int observed = observations[seen - 1 - delay];
          played = det.at(observed, reg);
        } else {
          played = mask_lowest(allowed);
        }
      }
    }

    robot = robot_target(grid, robot, played);
    if (robot == kid) ++result.safety_violations;
    if (robot == treasure) {
      ++result.score;
      treasure = random_cell();
    }
    result.robot_cells.push_back(robot);

    if (memory > 0) {
      reg.push_back(played);
      if (static_cast<int>(reg.size()) > memory) reg.erase(reg.begin());
    }
  }
  return result;
}

}  // namespace shieldlab::models
