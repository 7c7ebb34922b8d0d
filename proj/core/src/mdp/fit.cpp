#include "shieldlab/mdp/fit.hpp"

#include <algorithm>
#include <cmath>

namespace shieldlab::mdp {

namespace {

// Index of the closest reference value; exact midpoints go up.
int closest_bin(const std::vector<double>& refs, double x) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(refs.size()); ++i)
    if (std::abs(refs[i] - x) <= std::abs(refs[best] - x)) best = i;
  return best;
}

}  // namespace

CarTransitionModel::CarTransitionModel(
    FitGrids grids, std::vector<std::vector<double>> gamma,
    std::vector<std::vector<std::vector<Outcome>>> dv_dist)
    : grids_(std::move(grids)),
      gamma_(std::move(gamma)),
      dv_(std::move(dv_dist)) {}

int CarTransitionModel::speed_bin_of(double speed) const {
  return closest_bin(grids_.speeds, speed);
}

long long CarTransitionModel::dx(int action_index, int discrete_speed) const {
  const int bin = speed_bin_of(discrete_speed / grids_.mu_vel);
  const double g = gamma_[action_index][bin];
  if (std::isnan(g))
    throw MissingData("no samples for action bin " +
                      std::to_string(action_index) + ", speed bin " +
                      std::to_string(bin));
  // gamma maps speed to position increment in metres; convert to grid
  // units of the position axis.
  const double meters = g * (discrete_speed / grids_.mu_vel);
  return round_half_up(meters * grids_.mu_pos);
}

const std::vector<CarTransitionModel::Outcome>&
CarTransitionModel::dv_distribution(int action_index,
                                    int discrete_speed) const {
  const int bin = speed_bin_of(discrete_speed / grids_.mu_vel);
  const auto& dist = dv_[action_index][bin];
  if (dist.empty())
    throw MissingData("no samples for action bin " +
                      std::to_string(action_index) + ", speed bin " +
                      std::to_string(bin));
  return dist;
}

Mdp CarTransitionModel::to_mdp(int x_max, int v_max) const {
  const int actions = static_cast<int>(grids_.actions.size());
  Mdp mdp((x_max + 1) * (v_max + 1), actions);
  for (int x = 0; x <= x_max; ++x) {
    for (int v = 0; v <= v_max; ++v) {
      const int s = encode(x, v, v_max);
      for (int a = 0; a < actions; ++a) {
        const long long delta_x = dx(a, v);
        const int nx = static_cast<int>(
            std::clamp<long long>(x + delta_x, 0, x_max));
        for (const Outcome& o : dv_distribution(a, v)) {
          const int nv = std::clamp(v + o.dv, 0, v_max);
          mdp.add_transition(s, a, encode(nx, nv, v_max), o.prob);
        }
      }
    }
  }
  mdp.validate();
  return mdp;
}

CarTransitionModel fit_transitions(const std::vector<DynamicsSample>& samples,
                                   const FitGrids& grids) {
  if (grids.actions.empty() || grids.speeds.empty())
    throw InvalidConfig("fit grids must be nonempty");
  if (!(grids.mu_pos > 0.0) || !(grids.mu_vel > 0.0))
    throw InvalidConfig("multipliers must be positive");
  const int na = static_cast<int>(grids.actions.size());
  const int nv = static_cast<int>(grids.speeds.size());

  std::vector<std::vector<double>> num(na, std::vector<double>(nv, 0.0));
  std::vector<std::vector<double>> den(na, std::vector<double>(nv, 0.0));
  std::vector<std::vector<std::vector<long long>>> counts(
      na, std::vector<std::vector<long long>>(nv));
  std::vector<std::vector<std::vector<int>>> count_keys(
      na, std::vector<std::vector<int>>(nv));
  std::vector<std::vector<long long>> totals(na,
                                             std::vector<long long>(nv, 0));

  for (const DynamicsSample& sample : samples) {
    const int ai = closest_bin(grids.actions, sample.command);
    const int vi = closest_bin(grids.speeds, sample.speed);
    num[ai][vi] += sample.dx * sample.speed;
    den[ai][vi] += sample.speed * sample.speed;
    const int dv = static_cast<int>(round_half_up(sample.dv * grids.mu_vel));
    auto& keys = count_keys[ai][vi];
    auto& cnts = counts[ai][vi];
    const auto it = std::find(keys.begin(), keys.end(), dv);
    if (it == keys.end()) {
      keys.push_back(dv);
      cnts.push_back(1);
    } else {
      cnts[it - keys.begin()] += 1;
    }
    totals[ai][vi] += 1;
  }

  std::vector<std::vector<double>> gamma(
      na, std::vector<double>(nv, std::nan("")));
  std::vector<std::vector<std::vector<CarTransitionModel::Outcome>>> dv_dist(
      na, std::vector<std::vector<CarTransitionModel::Outcome>>(nv));
  for (int a = 0; a < na; ++a) {
    for (int v = 0; v < nv; ++v) {
      if (totals[a][v] == 0) continue;
      gamma[a][v] = den[a][v] > 0 ? num[a][v] / den[a][v] : 0.0;
      auto& dist = dv_dist[a][v];
      for (std::size_t i = 0; i < count_keys[a][v].size(); ++i)
        dist.push_back({count_keys[a][v][i],
                        static_cast<double>(counts[a][v][i]) /
                            static_cast<double>(totals[a][v])});
      std::sort(dist.begin(), dist.end(),
                [](const auto& l, const auto& r) { return l.dv < r.dv; });
    }
  }
  return CarTransitionModel(grids, std::move(gamma), std::move(dv_dist));
}

}  // namespace shieldlab::mdp
