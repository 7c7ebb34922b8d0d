#include "shieldlab/models/car_pedestrian.hpp"

#include <cmath>
#include <random>

namespace shieldlab::models {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Per-axis distribution over integer offsets for a zero-mean Gaussian step
// with standard deviation `s` grid units.
std::vector<std::pair<int, double>> axis_offsets(double s) {
  const int reach = std::max(1, static_cast<int>(std::ceil(4.0 * s)));
  std::vector<std::pair<int, double>> out;
  for (int k = -reach; k <= reach; ++k) {
    const double p = normal_cdf((k + 0.5) / s) - normal_cdf((k - 0.5) / s);
    if (p > 0) out.emplace_back(k, p);
  }
  return out;
}

}  // namespace

mdp::MarkovChain build_pedestrian_chain(const CarPedestrianSpec& spec) {
  if (spec.ped_nx < 1 || spec.ped_ny < 1)
    throw InvalidInput("pedestrian grid must be nonempty");
  const double step_sigma = spec.sigma_ped * spec.dt * spec.mu_pos;
  const auto offsets = axis_offsets(step_sigma);

  mdp::MarkovChain chain(spec.ped_nx * spec.ped_ny);
  for (int ix = 0; ix < spec.ped_nx; ++ix) {
    for (int iy = 0; iy < spec.ped_ny; ++iy) {
      const int s = ix * spec.ped_ny + iy;
      // Truncate to the grid and renormalize.
      double mass = 0;
      for (const auto& [dx, px] : offsets) {
        if (ix + dx < 0 || ix + dx >= spec.ped_nx) continue;
        for (const auto& [dy, py] : offsets) {
          if (iy + dy < 0 || iy + dy >= spec.ped_ny) continue;
          mass += px * py;
        }
      }
      for (const auto& [dx, px] : offsets) {
        if (ix + dx < 0 || ix + dx >= spec.ped_nx) continue;
        for (const auto& [dy, py] : offsets) {
          if (iy + dy < 0 || iy + dy >= spec.ped_ny) continue;
          chain.add_transition(s, (ix + dx) * spec.ped_ny + (iy + dy),
                               px * py / mass);
        }
      }
    }
  }
  chain.validate();
  return chain;
}

CarPedestrianModel build_car_pedestrian_mdp(
    const std::vector<mdp::DynamicsSample>& samples,
    const CarPedestrianSpec& spec) {
  mdp::FitGrids grids{spec.action_grid, spec.speed_refs, spec.mu_pos,
                      spec.mu_vel};
  CarPedestrianModel model{spec,
                           mdp::fit_transitions(samples, grids),
                           mdp::Mdp{1, 1},
                           mdp::MarkovChain{1},
                           mdp::Mdp{1, 1}};
  model.car = model.fitted.to_mdp(spec.x_max, spec.v_max);
  model.pedestrian = build_pedestrian_chain(spec);
  model.combined = mdp::product(model.car, model.pedestrian);
  return model;
}

std::vector<mdp::DynamicsSample> synthetic_dynamics_samples(
    const CarPedestrianSpec& spec, int per_cell, std::uint64_t seed) {
  if (per_cell < 1) throw InvalidInput("need at least one sample per cell");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Longitudinal stand-in dynamics: pedal gain 5 m/s^2 at full throttle,
  // quadratic-free drag, brake stronger at speed.
  auto probe = [&](double u, double a) {
    const double accel = 5.0 * a - 0.08 * u;
    double dv = accel * spec.dt + 0.05 * noise(rng);
    if (u + dv < 0) dv = -u;
    const double dx =
        std::max(0.0, u * spec.dt + 0.5 * accel * spec.dt * spec.dt +
                          0.02 * noise(rng));
    return std::pair<double, double>(dx, dv);
  };

  std::vector<mdp::DynamicsSample> samples;
  for (std::size_t ai = 0; ai < spec.action_grid.size(); ++ai) {
    const double a0 = spec.action_grid[ai];
    const double a_lo =
        ai == 0 ? a0 : 0.5 * (spec.action_grid[ai - 1] + a0);
    const double a_hi = ai + 1 == spec.action_grid.size()
                            ? a0
                            : 0.5 * (a0 + spec.action_grid[ai + 1]);
    for (std::size_t vi = 0; vi < spec.speed_refs.size(); ++vi) {
      const double v0 = spec.speed_refs[vi];
      const double v_lo =
          vi == 0 ? std::max(0.0, v0 - 1) : 0.5 * (spec.speed_refs[vi - 1] + v0);
      const double v_hi = vi + 1 == spec.speed_refs.size()
                              ? v0 + 1
                              : 0.5 * (v0 + spec.speed_refs[vi + 1]);
      for (int k = 0; k < per_cell; ++k) {
        const double a = a_lo + unit(rng) * (a_hi - a_lo);
        const double u = v_lo + unit(rng) * (v_hi - v_lo);
        const auto [dx, dv] = probe(u, a);
        samples.push_back({u, a, dx, dv});
      }
    }
  }
  return samples;
}

}  // namespace shieldlab::models
