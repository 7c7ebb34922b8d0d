#pragma once

#include "shieldlab/intention/counterfactual.hpp"

namespace shieldlab::models {

// Road scene for intention analysis: a car drives along x toward the end
// of the street while a pedestrian crosses near the crosswalk. Peripheral
// conditions (slipperiness range/factor, pedestrian hesitancy, a parked
// truck blocking visibility) modulate the dynamics and the driver models.
struct TrafficSpec {
  int x_max = 60;        // car x in [0, x_max]
  int car_y = 8;         // lane, constant along a run, in [3, 13]
  int v_max = 5;
  int ped_x_lo = 25;     // pedestrian corridor around the crosswalk
  int ped_x_hi = 35;
  int ped_y_max = 15;
  int crosswalk_x = 30;
  int truck_x = 18;      // sight blocker when vis = 1

  double sl_init = 20;   // slippery road section [sl_init, sl_end]
  double sl_end = 45;
  double sl_fact = 2.5;  // 1 = not slippery at all
  double h_fact = 0.5;   // 0 = fully cautious pedestrian
  int vis = 1;           // 1 = truck present

  // Collision predicate: conjunction |x_p-x_c|<=5 and |y_p-y_c|<=5 by
  // default; the disjunctive form is selectable.
  bool collision_disjunction = false;
};

enum class DriverKind { kOpportunistic, kReckless, kCautious };
enum TrafficAction { kTBrake = 0, kTAccelerate = 1, kTCoast = 2 };

struct TrafficModel {
  TrafficSpec spec;
  intention::LabeledMdp model;
  mdp::Policy opportunistic;
  mdp::Policy reckless;
  mdp::Policy cautious;

  int ped_xs() const { return spec.ped_x_hi - spec.ped_x_lo + 1; }
  int ped_ys() const { return spec.ped_y_max + 1; }
  // -1 when the tuple is outside the model.
  int encode(int car_x, int v, int ped_x, int ped_y, int turn) const;
  void decode(int state, int& car_x, int& v, int& ped_x, int& ped_y,
              int& turn) const;

  const mdp::Policy& driver(DriverKind kind) const;
};

TrafficModel build_traffic_mdp(const TrafficSpec& spec);

// Simulates the driver from the given start until collision, the end of
// the street, or max_steps; returns visited states.
std::vector<int> simulate_traffic(const TrafficModel& model,
                                  const mdp::Policy& policy, int start_state,
                                  int max_steps, std::uint64_t seed);

// Reference scenario for the retrospective loop: peripherals with the
// ranges used for counterfactual generation and a collision trace of the
// given driver. Integral variables: car_x, v, ped_x, ped_y, turn.
intention::FactoredScenario traffic_reference_scenario(const TrafficSpec& spec,
                                                       DriverKind agent,
                                                       std::uint64_t seed,
                                                       int max_steps = 200);

// Rebuilds the world for a peripheral assignment
// (sl_init, sl_end, sl_fact, h_fact, vis) and maps the scenario trace.
intention::ModelBuilder traffic_model_builder(
    TrafficSpec base, DriverKind agent,
    const intention::FactoredScenario& scenario);

}  // namespace shieldlab::models
