#pragma once

#include <cstdint>
#include <optional>

#include "shieldlab/fairness/synth.hpp"

namespace shieldlab::fairness {

enum class PeriodicVariant { kStaticFair, kStaticBW, kDynamic };

PeriodicVariant periodic_variant_from_name(const std::string& name);
std::string periodic_variant_name(PeriodicVariant variant);

// A replayed input step; z is the ground truth (-1 when absent / sampled).
struct ForcedInput {
  int group = 0;
  int rec = 0;
  double cost = 0;
  int z = -1;
};

struct PeriodicStep {
  int t = 0;  // global step index, starting at 0
  int group = 0;
  int rec = 0;
  double cost = 0;
  int decision = 0;
  double cumulative_bias = 0;
};

struct PeriodSummary {
  Counters local;        // counters accumulated within the period
  Counters cumulative;   // counters since the start of the run
  double local_bias = 0;
  double cumulative_bias = 0;
  double cost = 0;
};

struct PeriodicRun {
  std::vector<PeriodicStep> steps;
  std::vector<PeriodSummary> periods;
  double total_cost = 0;
};

struct PeriodicConfig {
  PeriodicVariant variant = PeriodicVariant::kStaticFair;
  FairnessProperty prop;
  double welfare_lo = 0;  // Static-BW
  double welfare_hi = 1;
  int horizon = 10;
  int periods = 1;
  std::uint64_t seed = 0;
  SynthOptions synth;
};

// Samples inputs from the distribution (or replays `forced`), applies the
// variant's per-period shield and records the bias at every multiple of
// the period. Static variants reuse one table with reset counters; the
// dynamic variant re-synthesizes per period on the cumulative counters.
PeriodicRun run_periodic(const PeriodicConfig& config,
                         const InputDistribution& dist,
                         const std::vector<ForcedInput>* forced = nullptr);

}  // namespace shieldlab::fairness
