#pragma once

#include "shieldlab/mdp/fit.hpp"

namespace shieldlab::models {

// Product model of Ch.-style ego-car dynamics (fitted from probe samples)
// and a pedestrian random walk, both over the local-discrete grid with
// multipliers mu_pos = mu_vel = 1/2 by default.
struct CarPedestrianSpec {
  std::vector<double> action_grid = {-0.75, -0.5, -0.25, 0.0,
                                     0.25,  0.5,  0.75};
  std::vector<double> speed_refs = {1.0, 3.0, 5.0, 7.0, 9.0};  // m/s
  double mu_pos = 0.5;
  double mu_vel = 0.5;
  double dt = 0.5;
  int x_max = 40;  // grid units
  int v_max = 20;
  int ped_nx = 21;  // pedestrian grid extent, grid units
  int ped_ny = 21;
  double sigma_ped = 2.0;  // adults 2, elders 1, children 3 (m/s)
};

struct CarPedestrianModel {
  CarPedestrianSpec spec;
  mdp::CarTransitionModel fitted;
  mdp::Mdp car{1, 1};
  mdp::MarkovChain pedestrian{1};
  mdp::Mdp combined{1, 1};

  int ped_state(int ix, int iy) const { return ix * spec.ped_ny + iy; }
  int product_state(int car_state, int ped) const {
    return car_state * (spec.ped_nx * spec.ped_ny) + ped;
  }
};

CarPedestrianModel build_car_pedestrian_mdp(
    const std::vector<mdp::DynamicsSample>& samples,
    const CarPedestrianSpec& spec);

// Pedestrian chain alone: independent zero-mean Gaussian steps per axis
// with std sigma_ped m/s, discretized, truncated to the grid, renormalized.
mdp::MarkovChain build_pedestrian_chain(const CarPedestrianSpec& spec);

// Synthetic probe data standing in for the digital-twin experiments: a
// first-order longitudinal model with pedal-dependent gain and mild noise,
// sampled per (action, speed) cell.
std::vector<mdp::DynamicsSample> synthetic_dynamics_samples(
    const CarPedestrianSpec& spec, int per_cell, std::uint64_t seed);

}  // namespace shieldlab::models
