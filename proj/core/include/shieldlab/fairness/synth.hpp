#pragma once

#include "shieldlab/fairness/table.hpp"

namespace shieldlab::fairness {

struct SynthOptions {
  // Keep the full value table when the total cell count stays under this
  // limit; decisions and infeasibility bits are always kept.
  std::size_t keep_values_cell_limit = 30000000;
};

// Cost-minimal finite-horizon shield: backward dynamic program over the
// counter abstraction with base case 0/infinity on property satisfaction.
// An infinite root value means no shield can enforce the property; the
// result reports it via feasible().
FairnessShieldTable synth_finhzn(const InputDistribution& dist,
                                 const FairnessProperty& prop, int horizon,
                                 const SynthOptions& options = {});

// Static-BW building block: base case exempts traces that are not
// N-balanced (N = ceil(1/(u-l))) and requires both group welfares within
// [lo, hi] on the balanced ones. DI is rejected (not a DoR property).
FairnessShieldTable synth_static_bw(const InputDistribution& dist,
                                    FairnessKind kind, double welfare_lo,
                                    double welfare_hi, int horizon,
                                    const SynthOptions& options = {});

// Dynamic-shield period synthesis conditioned on the accumulated prefix
// counters. Suffixes violating the feasibility assumption
// 1/den_a + 1/den_b <= kappa + bias(prefix) are exempted (the shield goes
// transparent for them); with an all-zero prefix this is exactly
// synth_finhzn.
FairnessShieldTable synth_dynamic(const InputDistribution& dist,
                                  const FairnessProperty& prop, int horizon,
                                  const Counters& prefix,
                                  const SynthOptions& options = {});

// Expected intervention cost of following the table's decisions from the
// given cell, computed by an independent pass over the decision bits.
// Reproduces the value function (root_value at the root cell).
double expected_cost(const FairnessShieldTable& table,
                     const InputDistribution& dist, int from_time,
                     const Counters& from);

// Probability that a Binomial(T, p) sample lies in [N, T - N].
double balance_probability(int horizon, double p, int n_required);

// Balance requirement N = ceil(1/(u-l)) and whether any length-T trace can
// meet it.
int bw_balance_requirement(double welfare_lo, double welfare_hi);
bool bw_balanced_traces_exist(int horizon, double welfare_lo,
                              double welfare_hi);

}  // namespace shieldlab::fairness
