#include "shieldlab/models/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace shieldlab::models {

namespace {

bool in_hit_zone(const TrafficSpec& spec, int car_x, int ped_x, int ped_y) {
  const bool near_x = std::abs(ped_x - car_x) <= 5;
  const bool near_y = std::abs(ped_y - spec.car_y) <= 5;
  return spec.collision_disjunction ? (near_x || near_y) : (near_x && near_y);
}

bool pedestrian_visible(const TrafficSpec& spec, int car_x, int ped_x) {
  if (spec.vis == 0) return true;
  // The parked truck hides everything beyond it until the car passes.
  return !(car_x < spec.truck_x && ped_x >= spec.truck_x);
}

bool slippery_at(const TrafficSpec& spec, int car_x) {
  return car_x >= spec.sl_init && car_x <= spec.sl_end;
}

// Velocity-change distribution of a car action.
std::vector<std::pair<int, double>> action_effect(const TrafficSpec& spec,
                                                  int car_x, int action) {
  const bool slippery = slippery_at(spec, car_x);
  const double q =
      slippery ? (spec.sl_fact - 1.0) / spec.sl_fact : 0.0;
  switch (action) {
    case kTBrake: {
      if (q <= 0) return {{-1, 0.5}, {-2, 0.5}};
      return {{0, q}, {-1, (1 - q) / 2}, {-2, (1 - q) / 2}};
    }
    case kTAccelerate: {
      if (q <= 0) return {{1, 0.5}, {2, 0.5}};
      return {{0, q}, {1, (1 - q) / 2}, {2, (1 - q) / 2}};
    }
    default:
      return {{0, 0.5}, {-1, 0.5}};
  }
}

}  // namespace

int TrafficModel::encode(int car_x, int v, int ped_x, int ped_y,
                         int turn) const {
  if (car_x < 0 || car_x > spec.x_max || v < 0 || v > spec.v_max ||
      ped_x < spec.ped_x_lo || ped_x > spec.ped_x_hi || ped_y < 0 ||
      ped_y > spec.ped_y_max || turn < 0 || turn > 1)
    return -1;
  int s = car_x;
  s = s * (spec.v_max + 1) + v;
  s = s * ped_xs() + (ped_x - spec.ped_x_lo);
  s = s * ped_ys() + ped_y;
  return s * 2 + turn;
}

void TrafficModel::decode(int state, int& car_x, int& v, int& ped_x,
                          int& ped_y, int& turn) const {
  turn = state % 2;
  state /= 2;
  ped_y = state % ped_ys();
  state /= ped_ys();
  ped_x = state % ped_xs() + spec.ped_x_lo;
  state /= ped_xs();
  v = state % (spec.v_max + 1);
  car_x = state / (spec.v_max + 1);
}

const mdp::Policy& TrafficModel::driver(DriverKind kind) const {
  switch (kind) {
    case DriverKind::kOpportunistic:
      return opportunistic;
    case DriverKind::kReckless:
      return reckless;
    case DriverKind::kCautious:
      return cautious;
  }
  return opportunistic;
}

TrafficModel build_traffic_mdp(const TrafficSpec& spec) {
  if (spec.car_y < 3 || spec.car_y > 13)
    throw InvalidInput("car lane must be in [3, 13]");
  if (spec.ped_x_lo < 0 || spec.ped_x_hi > spec.x_max ||
      spec.ped_x_lo > spec.ped_x_hi)
    throw InvalidInput("pedestrian corridor out of range");
  if (spec.sl_fact < 1.0) throw InvalidInput("sl_fact must be >= 1");
  if (spec.h_fact < 0.0 || spec.h_fact > 1.0)
    throw InvalidInput("h_fact must be in [0, 1]");

  const int ped_xs = spec.ped_x_hi - spec.ped_x_lo + 1;
  const int ped_ys = spec.ped_y_max + 1;
  const int states = (spec.x_max + 1) * (spec.v_max + 1) * ped_xs * ped_ys * 2;
  mdp::Mdp mdp(states, 3);

  auto encode = [&](int car_x, int v, int ped_x, int ped_y, int turn) {
    int s = car_x;
    s = s * (spec.v_max + 1) + v;
    s = s * ped_xs + (ped_x - spec.ped_x_lo);
    s = s * ped_ys + ped_y;
    return s * 2 + turn;
  };

  mdp::Policy opportunistic(states), reckless(states), cautious(states);
  std::vector<int> collision_states;
  std::vector<int> end_states;
  std::vector<ActionMask> restriction(states, 0);

  for (int car_x = 0; car_x <= spec.x_max; ++car_x) {
    for (int v = 0; v <= spec.v_max; ++v) {
      for (int ped_x = spec.ped_x_lo; ped_x <= spec.ped_x_hi; ++ped_x) {
        for (int ped_y = 0; ped_y <= spec.ped_y_max; ++ped_y) {
          const int car_turn = encode(car_x, v, ped_x, ped_y, 0);
          const int ped_turn = encode(car_x, v, ped_x, ped_y, 1);

          // Car turn: uniform motion at the current velocity plus the
          // stochastic velocity effect of the pedal.
          const int nx = std::min(car_x + v, spec.x_max);
          for (int a = 0; a < 3; ++a) {
            for (const auto& [dv, p] : action_effect(spec, car_x, a)) {
              const int nv = std::clamp(v + dv, 0, spec.v_max);
              mdp.add_transition(car_turn, a,
                                 encode(nx, nv, ped_x, ped_y, 1), p);
            }
          }

          // Pedestrian turn: one action carrying the stochastic step. The
          // walk prefers heading for the crosswalk and then crossing;
          // steps that newly enter hitting distance are damped by the
          // hesitancy factor.
          const std::pair<int, int> steps[5] = {
              {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
          double weights[5];
          const bool inside_zone = in_hit_zone(spec, car_x, ped_x, ped_y);
          for (int i = 0; i < 5; ++i) {
            const int nxp = ped_x + steps[i].first;
            const int nyp = ped_y + steps[i].second;
            if (nxp < spec.ped_x_lo || nxp > spec.ped_x_hi || nyp < 0 ||
                nyp > spec.ped_y_max) {
              weights[i] = 0;
              continue;
            }
            double w = 1.0;
            const bool toward_crosswalk =
                std::abs(nxp - spec.crosswalk_x) < std::abs(ped_x -
                                                            spec.crosswalk_x);
            const bool crossing = nyp < ped_y;
            if (ped_x != spec.crosswalk_x ? toward_crosswalk : crossing)
              w = 4.0;
            if (!inside_zone && in_hit_zone(spec, car_x, nxp, nyp))
              w *= spec.h_fact;
            weights[i] = w;
          }
          double mass = 0;
          for (double w : weights) mass += w;
          // Staying put is always possible, so mass > 0.
          for (int i = 0; i < 5; ++i) {
            if (weights[i] <= 0) continue;
            const int succ = encode(car_x, v, ped_x + steps[i].first,
                                    ped_y + steps[i].second, 0);
            mdp.add_transition(ped_turn, 0, succ, weights[i] / mass);
          }

          // Comparable policies never brake when no pedestrian is near.
          const bool ped_near = std::abs(ped_x - car_x) <= 15;
          restriction[car_turn] =
              ped_near ? full_mask(3)
                       : (ActionMask{1} << kTAccelerate) |
                             (ActionMask{1} << kTCoast);
          restriction[ped_turn] = ActionMask{1};

          if (in_hit_zone(spec, car_x, ped_x, ped_y)) {
            collision_states.push_back(car_turn);
            collision_states.push_back(ped_turn);
          }
          if (car_x >= spec.x_max) {
            end_states.push_back(car_turn);
            end_states.push_back(ped_turn);
          }

          // Driver models (car-turn states; the pedestrian turn has the
          // single forced action).
          const bool visible = pedestrian_visible(spec, car_x, ped_x);
          const bool sees_threat =
              visible && std::abs(ped_x - car_x) <= 15 && ped_x >= car_x;
          int opportunistic_choice;
          if (visible && std::abs(ped_x - car_x) <= 12 && ped_y >= 3 &&
              ped_y <= 13)
            opportunistic_choice = kTAccelerate;
          else
            opportunistic_choice = v < 3 ? kTAccelerate : kTCoast;
          opportunistic.set_deterministic(car_turn,
                                                opportunistic_choice);
          reckless.set_deterministic(car_turn, kTAccelerate);
          cautious.set_deterministic(
              car_turn, sees_threat && v > 0
                            ? kTBrake
                            : (sees_threat ? kTCoast
                                           : (v < 3 ? kTAccelerate : kTCoast)));
          opportunistic.set_deterministic(ped_turn, 0);
          reckless.set_deterministic(ped_turn, 0);
          cautious.set_deterministic(ped_turn, 0);
        }
      }
    }
  }

  mdp.validate();
  std::map<std::string, std::vector<int>> valuation;
  std::sort(collision_states.begin(), collision_states.end());
  collision_states.erase(
      std::unique(collision_states.begin(), collision_states.end()),
      collision_states.end());
  valuation["collision"] = std::move(collision_states);
  valuation["end"] = std::move(end_states);
  intention::LabeledMdp labeled(std::move(mdp), std::move(valuation));
  labeled.set_restriction(std::move(restriction));
  return TrafficModel{spec, std::move(labeled), std::move(opportunistic),
                      std::move(reckless), std::move(cautious)};
}

std::vector<int> simulate_traffic(const TrafficModel& model,
                                  const mdp::Policy& policy, int start_state,
                                  int max_steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const mdp::Mdp& mdp = model.model.base();
  const std::vector<int> collisions =
      model.model.states_of(intention::Formula::parse("collision"));
  std::vector<std::uint8_t> is_collision(mdp.state_count(), 0);
  for (int s : collisions) is_collision[s] = 1;

  std::vector<int> trace{start_state};
  int s = start_state;
  for (int step = 0; step < max_steps; ++step) {
    if (is_collision[s]) break;
    int car_x, v, ped_x, ped_y, turn;
    model.decode(s, car_x, v, ped_x, ped_y, turn);
    if (car_x >= model.spec.x_max) break;
    const auto& dist = policy.choice(s);
    const int action = dist.front().first;
    const auto& row = mdp.row(s, action);
    double u = unit(rng);
    int next = row.back().succ;
    for (const auto& e : row) {
      if (u <= e.prob) {
        next = e.succ;
        break;
      }
      u -= e.prob;
    }
    trace.push_back(next);
    s = next;
  }
  return trace;
}

intention::FactoredScenario traffic_reference_scenario(const TrafficSpec& spec,
                                                       DriverKind agent,
                                                       std::uint64_t seed,
                                                       int max_steps) {
  TrafficModel model = build_traffic_mdp(spec);
  const std::vector<int> collisions =
      model.model.states_of(intention::Formula::parse("collision"));
  std::vector<std::uint8_t> is_collision(model.model.base().state_count(), 0);
  for (int s : collisions) is_collision[s] = 1;

  const int start =
      model.encode(0, 2, spec.crosswalk_x, spec.ped_y_max - 1, 0);
  std::vector<int> trace;
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    trace = simulate_traffic(model, model.driver(agent), start, max_steps,
                             seed + attempt);
    if (!trace.empty() && is_collision[trace.back()]) break;
    trace.clear();
  }
  if (trace.empty())
    throw InvalidInput("no collision trace found for the reference scenario");

  intention::FactoredScenario scenario;
  scenario.name = "traffic";
  scenario.peripherals = {
      {"sl_init", spec.sl_init, 10, 30, false},
      {"sl_end", spec.sl_end, 35, 55, false},
      {"sl_fact", spec.sl_fact, 1, 4, false},
      {"h_fact", spec.h_fact, 0.1, 0.9, false},
      {"vis", static_cast<double>(spec.vis), 0, 1, true},
  };
  scenario.integral_names = {"car_x", "v", "ped_x", "ped_y", "turn"};
  for (int s : trace) {
    int car_x, v, ped_x, ped_y, turn;
    model.decode(s, car_x, v, ped_x, ped_y, turn);
    scenario.integral_trace.push_back({car_x, v, ped_x, ped_y, turn});
  }
  scenario.goal = "collision";
  return scenario;
}

intention::ModelBuilder traffic_model_builder(
    TrafficSpec base, DriverKind agent,
    const intention::FactoredScenario& scenario) {
  const std::vector<std::vector<int>> trace = scenario.integral_trace;
  return [base, agent, trace](const intention::PeripheralAssignment& varied)
             -> intention::RebuiltModel {
    if (varied.size() != 5)
      throw InvalidInput("traffic assignment needs 5 peripherals");
    TrafficSpec spec = base;
    spec.sl_init = varied[0];
    spec.sl_end = varied[1];
    spec.sl_fact = varied[2];
    spec.h_fact = varied[3];
    spec.vis = static_cast<int>(varied[4]);
    TrafficModel model = build_traffic_mdp(spec);

    std::vector<int> states;
    for (const auto& row : trace) {
      const int s = model.encode(row[0], row[1], row[2], row[3], row[4]);
      if (s < 0) {
        states.clear();
        break;
      }
      states.push_back(s);
    }
    return intention::RebuiltModel{std::move(model.model),
                                   model.driver(agent), std::move(states)};
  };
}

}  // namespace shieldlab::models
