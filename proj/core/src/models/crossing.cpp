#include "shieldlab/models/crossing.hpp"

#include <algorithm>
#include <cmath>

namespace shieldlab::models {

namespace {

// Position after one step, rounded down to the grid (toward the crossing).
int next_position(const CrossingSpec& spec, int p, int v, double accel) {
  const double moved =
      p - v * spec.dt - 0.5 * accel * spec.dt * spec.dt;
  const double clamped = std::max(0.0, moved);
  const int grid = static_cast<int>(std::floor(clamped / spec.p_step)) *
                   spec.p_step;
  return std::min(grid, spec.p_max);
}

}  // namespace

CrossingGame build_crossing_game(const CrossingSpec& spec,
                                 CrossingVariant variant) {
  if (spec.p_max < spec.p_step || spec.p_max % spec.p_step != 0)
    throw InvalidInput("position grid must be a multiple of the step");
  if (spec.v_max < 1) throw InvalidInput("velocity grid must be nonempty");

  CrossingGame out;
  out.spec = spec;
  out.variant = variant;
  out.positions = spec.p_max / spec.p_step + 1;
  out.velocities = spec.v_max + 1;

  const int dv = static_cast<int>(std::lround(spec.accel * spec.dt));
  auto clamp_v = [&](int v) { return std::clamp(v, 0, spec.v_max); };

  if (variant == CrossingVariant::kCarCar) {
    const int states =
        out.positions * out.velocities * out.positions * out.velocities;
    out.game = games::GameGraph(states, states, 3);

    // Ego accelerations are exact; the other car's throttle and brake act
    // stochastically (one or two velocity steps), kept as adversarial
    // branches.
    const int ego_dv[3] = {dv, -dv, 0};
    const std::vector<std::vector<int>> env_dv = {{dv, 2 * dv},
                                                  {-dv, -2 * dv},
                                                  {0}};

    for (int pa = 0; pa < out.positions; ++pa) {
      for (int va = 0; va < out.velocities; ++va) {
        for (int pe = 0; pe < out.positions; ++pe) {
          for (int ve = 0; ve < out.velocities; ++ve) {
            const int agent = out.car_car_state(pa, va, pe, ve);
            for (int a = 0; a < 3; ++a) {
              const int np = out.pos_index(next_position(
                  spec, pa * spec.p_step, va,
                  a == kAccelerate ? spec.accel
                                   : (a == kBrake ? -spec.accel : 0.0)));
              const int nv = clamp_v(va + ego_dv[a]);
              out.game.add_agent_edge(agent,
                                      a, out.car_car_state(np, nv, pe, ve));
            }
            const int env = agent;
            for (int a = 0; a < 3; ++a) {
              for (int delta : env_dv[a]) {
                const double acc = delta / spec.dt;
                const int np = out.pos_index(
                    next_position(spec, pe * spec.p_step, ve, acc));
                const int nv = clamp_v(ve + delta);
                out.game.add_env_edge(env,
                                      out.car_car_state(pa, va, np, nv));
              }
            }
            if (pa == pe) {
              out.game.set_agent_unsafe(agent);
              out.game.set_env_unsafe(env);
            }
          }
        }
      }
    }
    out.game.set_initial(out.car_car_state(out.positions - 1, 0,
                                           out.positions - 1, 0));
  } else {
    out.ped_positions = spec.p_max + 1;  // 1 m resolution
    const int states = out.positions * out.velocities * out.ped_positions;
    out.game = games::GameGraph(states, states, 3);

    for (int pa = 0; pa < out.positions; ++pa) {
      for (int va = 0; va < out.velocities; ++va) {
        for (int pp = 0; pp < out.ped_positions; ++pp) {
          const int agent = out.car_ped_state(pa, va, pp);
          for (int a = 0; a < 3; ++a) {
            const int np = out.pos_index(next_position(
                spec, pa * spec.p_step, va,
                a == kAccelerate ? spec.accel
                                 : (a == kBrake ? -spec.accel : 0.0)));
            const int nv = clamp_v(va + (a == kAccelerate  ? dv
                                         : a == kBrake ? -dv
                                                       : 0));
            out.game.add_agent_edge(agent, a, out.car_ped_state(np, nv, pp));
          }
          // The pedestrian moves one metre in any direction or stays.
          for (int step = -1; step <= 1; ++step) {
            const int npp = std::clamp(pp + step, 0, spec.p_max);
            out.game.add_env_edge(agent, out.car_ped_state(pa, va, npp));
          }
          const bool unsafe = va > 2 &&
                              std::abs(pa * spec.p_step - pp) < 5 &&
                              pp < pa * spec.p_step;
          if (unsafe) {
            out.game.set_agent_unsafe(agent);
            out.game.set_env_unsafe(agent);
          }
        }
      }
    }
    out.game.set_initial(
        out.car_ped_state(out.positions - 1, 0, out.ped_positions - 1));
  }
  out.game.validate();
  return out;
}

}  // namespace shieldlab::models
