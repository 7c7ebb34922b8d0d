#pragma once

#include <optional>
#include <utility>

#include "shieldlab/games/game_graph.hpp"

namespace shieldlab::models {

// Single-actor gridworld: both players move the same robot by one field in
// alternating turns, actions {U, D, R, L, N} on each side, off-board moves
// replaced by N. Coordinates are 1-based, (x, y) with y growing upward.
struct SingleActorGrid {
  int width = 7;
  int height = 9;
  games::GameGraph game{1, 1, 1};

  int cell(int x, int y) const { return (x - 1) + (y - 1) * width; }
  int agent_state(int x, int y) const { return cell(x, y); }
  int env_state(int x, int y) const { return cell(x, y); }
};

// Actions of the single-actor grid, in id order.
enum SingleActorAction { kUp = 0, kDown = 1, kRight = 2, kLeft = 3, kStay = 4 };

SingleActorGrid build_single_actor_grid(
    int width, int height, const std::vector<std::pair<int, int>>& unsafe);

// Robot-and-kid gridworld of width 3n+4 and height 9 with n pairs of
// dead-end pockets formed by vertical walls (x = 3k, rows 3..7) and a
// horizontal bar (y = 5). The robot (agent) has the rich 25-action set with
// two-step and L-moves; the kid (environment) moves one field in the four
// directions. Illegal moves act as "no move".
struct RobotKidGrid {
  int dead_end_pairs = 2;
  int width = 10;
  int height = 9;
  std::vector<std::uint8_t> blocked;
  std::vector<int> cell_index;  // grid position -> dense legal-cell id, -1
  std::vector<std::pair<int, int>> cells;  // dense id -> (x, y)
  games::GameGraph game{1, 1, 1};

  bool legal(int x, int y) const {
    return x >= 1 && x <= width && y >= 1 && y <= height &&
           !blocked[(x - 1) + (y - 1) * width];
  }
  int cell(int x, int y) const {
    return cell_index[(x - 1) + (y - 1) * width];
  }
  int cell_count() const { return static_cast<int>(cells.size()); }

  // States pair the kid cell with the robot cell.
  int agent_state(int kid_cell, int robot_cell) const {
    return kid_cell * cell_count() + robot_cell;
  }
  int env_state(int kid_cell, int robot_cell) const {
    return kid_cell * cell_count() + robot_cell;
  }
  std::pair<int, int> split_state(int state) const {
    return {state / cell_count(), state % cell_count()};
  }

  // Unit-step sequences of the 25 robot actions, in id order.
  static const std::vector<std::vector<std::pair<int, int>>>& robot_moves();
};

RobotKidGrid build_robot_kid_grid(int dead_end_pairs);

// Spec-level entry point: a dead-end parameter selects the robot-and-kid
// variant; otherwise the single-actor game on width x height is built.
struct GridworldSpec {
  int width = 7;
  int height = 9;
  std::vector<std::pair<int, int>> unsafe_cells;
  std::optional<int> dead_end_pairs;
};

games::GameGraph build_gridworld(const GridworldSpec& spec);

}  // namespace shieldlab::models
