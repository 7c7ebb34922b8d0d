#pragma once

#include <vector>

#include "shieldlab/mdp/mdp.hpp"

namespace shieldlab::mdp {

// One probe of the car dynamics: initial speed (m/s), applied pedal command
// in [-1, 1], and the measured position/speed increments over one timestep.
struct DynamicsSample {
  double speed;
  double command;
  double dx;
  double dv;
};

// Discretization grids: reference command values (sorted ascending) and
// reference speeds (m/s, sorted ascending). Samples are binned to the
// closest reference value on each axis.
struct FitGrids {
  std::vector<double> actions;
  std::vector<double> speeds;
  double mu_pos = 0.5;
  double mu_vel = 0.5;
};

// Fitted car transition function. Per (action, speed) cell the position
// increment is the least-squares gain times the current speed, and the
// speed increment follows the relative frequencies of the discretized
// measurements.
class CarTransitionModel {
 public:
  struct Outcome {
    int dv;       // speed increment in grid units
    double prob;  // relative frequency
  };

  CarTransitionModel(FitGrids grids, std::vector<std::vector<double>> gamma,
                     std::vector<std::vector<std::vector<Outcome>>> dv_dist);

  const FitGrids& grids() const { return grids_; }
  double gamma(int action_index, int speed_bin) const {
    return gamma_[action_index][speed_bin];
  }

  // Position increment in grid units for discrete speed V (grid units).
  long long dx(int action_index, int discrete_speed) const;
  const std::vector<Outcome>& dv_distribution(int action_index,
                                              int discrete_speed) const;

  int speed_bin_of(double speed) const;

  // Expands the model into an explicit MDP over (X, V) with X in
  // [0, x_max] and V in [0, v_max] (grid units); increments that leave the
  // grid saturate at the bounds.
  Mdp to_mdp(int x_max, int v_max) const;
  static int encode(int x, int v, int v_max) { return x * (v_max + 1) + v; }

 private:
  FitGrids grids_;
  std::vector<std::vector<double>> gamma_;           // [action][speed bin]
  std::vector<std::vector<std::vector<Outcome>>> dv_;
};

// Least-squares fit of the per-cell gains (gamma = sum(dx*u) / sum(u^2))
// and the relative-frequency speed-increment distributions. Cells that end
// up empty raise MissingData naming the cell when queried.
CarTransitionModel fit_transitions(const std::vector<DynamicsSample>& samples,
                                   const FitGrids& grids);

}  // namespace shieldlab::mdp
