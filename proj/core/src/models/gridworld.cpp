#include "shieldlab/models/gridworld.hpp"

namespace shieldlab::models {

namespace {
constexpr std::pair<int, int> kUnitSteps[5] = {
    {0, 1}, {0, -1}, {1, 0}, {-1, 0}, {0, 0}};
}

SingleActorGrid build_single_actor_grid(
    int width, int height, const std::vector<std::pair<int, int>>& unsafe) {
  if (width < 1 || height < 1) throw InvalidInput("grid dimensions >= 1");
  SingleActorGrid grid;
  grid.width = width;
  grid.height = height;
  const int cells = width * height;
  grid.game = games::GameGraph(cells, cells, 5);

  auto in_bounds = [&](int x, int y) {
    return x >= 1 && x <= width && y >= 1 && y <= height;
  };

  for (int y = 1; y <= height; ++y) {
    for (int x = 1; x <= width; ++x) {
      const int here = grid.cell(x, y);
      for (int a = 0; a < 5; ++a) {
        int nx = x + kUnitSteps[a].first;
        int ny = y + kUnitSteps[a].second;
        if (!in_bounds(nx, ny)) {
          nx = x;
          ny = y;
        }
        // Agent action a moves the robot; the environment has the mirrored
        // move set, realized as unlabeled edges (duplicates collapse).
        grid.game.add_agent_edge(here, a, grid.cell(nx, ny));
        grid.game.add_env_edge(here, grid.cell(nx, ny));
      }
    }
  }

  for (const auto& [x, y] : unsafe) {
    if (!in_bounds(x, y)) throw InvalidInput("unsafe cell out of bounds");
    grid.game.set_agent_unsafe(grid.cell(x, y));
    grid.game.set_env_unsafe(grid.cell(x, y));
  }
  grid.game.set_initial(grid.env_state(1, std::min(9, height)));
  grid.game.validate();
  return grid;
}

const std::vector<std::vector<std::pair<int, int>>>&
RobotKidGrid::robot_moves() {
  // N, U, D, R, L, UU, DD, RR, LL, UR, RU, UL, LU, DR, RD, DL, LD,
  // UUR, UUL, DDR, DDL, RRU, RRD, LLU, LLD.
  static const std::vector<std::vector<std::pair<int, int>>> moves = [] {
    const std::pair<int, int> u{0, 1}, d{0, -1}, r{1, 0}, l{-1, 0};
    std::vector<std::vector<std::pair<int, int>>> m;
    m.push_back({});            // N
    m.push_back({u});           // U
    m.push_back({d});           // D
    m.push_back({r});           // R
    m.push_back({l});           // L
    m.push_back({u, u});        // UU
    m.push_back({d, d});        // DD
    m.push_back({r, r});        // RR
    m.push_back({l, l});        // LL
    m.push_back({u, r});        // UR
    m.push_back({r, u});        // RU
    m.push_back({u, l});        // UL
    m.push_back({l, u});        // LU
    m.push_back({d, r});        // DR
    m.push_back({r, d});        // RD
    m.push_back({d, l});        // DL
    m.push_back({l, d});        // LD
    m.push_back({u, u, r});     // UUR
    m.push_back({u, u, l});     // UUL
    m.push_back({d, d, r});     // DDR
    m.push_back({d, d, l});     // DDL
    m.push_back({r, r, u});     // RRU
    m.push_back({r, r, d});     // RRD
    m.push_back({l, l, u});     // LLU
    m.push_back({l, l, d});     // LLD
    return m;
  }();
  return moves;
}

RobotKidGrid build_robot_kid_grid(int dead_end_pairs) {
  if (dead_end_pairs < 0) throw InvalidInput("dead-end parameter must be >= 0");
  RobotKidGrid grid;
  grid.dead_end_pairs = dead_end_pairs;
  grid.width = 3 * dead_end_pairs + 4;
  grid.height = 9;
  grid.blocked.assign(grid.width * grid.height, 0);

  // Vertical walls x = 3k spanning rows 3..7, joined by the y = 5 bar:
  // each gap between consecutive walls forms an upper and a lower pocket.
  for (int k = 1; k <= dead_end_pairs + 1; ++k) {
    const int x = 3 * k;
    if (x > grid.width) break;
    for (int y = 3; y <= 7; ++y) grid.blocked[(x - 1) + (y - 1) * grid.width] = 1;
  }
  if (dead_end_pairs > 0)
    for (int x = 3; x <= 3 * (dead_end_pairs + 1) && x <= grid.width; ++x)
      grid.blocked[(x - 1) + 4 * grid.width] = 1;  // y = 5

  grid.cell_index.assign(grid.width * grid.height, -1);
  for (int y = 1; y <= grid.height; ++y)
    for (int x = 1; x <= grid.width; ++x)
      if (!grid.blocked[(x - 1) + (y - 1) * grid.width]) {
        grid.cell_index[(x - 1) + (y - 1) * grid.width] =
            static_cast<int>(grid.cells.size());
        grid.cells.emplace_back(x, y);
      }

  const int cells = grid.cell_count();
  const int states = cells * cells;
  const auto& moves = RobotKidGrid::robot_moves();
  grid.game = games::GameGraph(states, states, static_cast<int>(moves.size()));

  for (int kid = 0; kid < cells; ++kid) {
    const auto [kx, ky] = grid.cells[kid];
    for (int robot = 0; robot < cells; ++robot) {
      const auto [rx, ry] = grid.cells[robot];
      const int agent = grid.agent_state(kid, robot);
      const int env = grid.env_state(kid, robot);

      // Robot actions: every intermediate cell must be legal, otherwise
      // the move degrades to "no move".
      for (int a = 0; a < static_cast<int>(moves.size()); ++a) {
        int x = rx, y = ry;
        bool ok = true;
        for (const auto& [dx, dy] : moves[a]) {
          x += dx;
          y += dy;
          if (!grid.legal(x, y)) {
            ok = false;
            break;
          }
        }
        const int target = ok ? grid.cell(x, y) : robot;
        grid.game.add_agent_edge(agent, a, grid.env_state(kid, target));
      }

      // Kid moves one field; illegal directions act as "no move".
      for (int dir = 0; dir < 4; ++dir) {
        const int nx = kx + kUnitSteps[dir].first;
        const int ny = ky + kUnitSteps[dir].second;
        const int target = grid.legal(nx, ny) ? grid.cell(nx, ny) : kid;
        grid.game.add_env_edge(env, grid.agent_state(target, robot));
      }

      if (kid == robot) {
        grid.game.set_agent_unsafe(agent);
        grid.game.set_env_unsafe(env);
      }
    }
  }

  grid.game.set_initial(
      grid.env_state(grid.cell(grid.width, grid.height), grid.cell(1, 1)));
  grid.game.validate();
  return grid;
}

games::GameGraph build_gridworld(const GridworldSpec& spec) {
  if (spec.dead_end_pairs.has_value())
    return build_robot_kid_grid(*spec.dead_end_pairs).game;
  return build_single_actor_grid(spec.width, spec.height, spec.unsafe_cells)
      .game;
}

}  // namespace shieldlab::models
