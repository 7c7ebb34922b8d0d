#include "shieldlab/fairness/periodic.hpp"

#include <random>

namespace shieldlab::fairness {

PeriodicVariant periodic_variant_from_name(const std::string& name) {
  if (name == "static-fair") return PeriodicVariant::kStaticFair;
  if (name == "static-bw") return PeriodicVariant::kStaticBW;
  if (name == "dynamic") return PeriodicVariant::kDynamic;
  throw InvalidConfig("unknown periodic variant `" + name + "`");
}

std::string periodic_variant_name(PeriodicVariant variant) {
  switch (variant) {
    case PeriodicVariant::kStaticFair:
      return "static-fair";
    case PeriodicVariant::kStaticBW:
      return "static-bw";
    case PeriodicVariant::kDynamic:
      return "dynamic";
  }
  return "?";
}

PeriodicRun run_periodic(const PeriodicConfig& config,
                         const InputDistribution& dist,
                         const std::vector<ForcedInput>* forced) {
  if (config.periods < 1) throw InvalidConfig("need at least one period");
  if (config.prop.kind == FairnessKind::kDisparateImpact)
    throw InvalidConfig(
        "disparate impact violates the difference-of-ratios condition; "
        "periodic shielding is rejected for it");
  dist.validate();
  const bool eqopp = config.prop.kind == FairnessKind::kEqualOpportunity;
  if (forced != nullptr &&
      forced->size() <
          static_cast<std::size_t>(config.periods) * config.horizon)
    throw InvalidConfig("forced input stream shorter than the run");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Cumulative probabilities for atom sampling.
  std::vector<double> cdf;
  double acc = 0;
  for (const InputAtom& x : dist.atoms()) {
    acc += x.prob;
    cdf.push_back(acc);
  }

  auto sample_atom = [&]() {
    const double u = unit(rng) * acc;
    for (int i = 0; i < dist.size(); ++i)
      if (u <= cdf[i]) return i;
    return dist.size() - 1;
  };

  std::optional<FairnessShieldTable> static_table;
  if (config.variant == PeriodicVariant::kStaticFair) {
    static_table = synth_finhzn(dist, config.prop, config.horizon,
                                config.synth);
    if (!static_table->feasible())
      throw InfeasibleState("finite-horizon synthesis is infeasible");
  } else if (config.variant == PeriodicVariant::kStaticBW) {
    static_table =
        synth_static_bw(dist, config.prop.kind, config.welfare_lo,
                        config.welfare_hi, config.horizon, config.synth);
    if (!static_table->feasible())
      throw InfeasibleState("bounded-welfare synthesis is infeasible");
  }

  PeriodicRun run;
  Counters cumulative;
  int t_global = 0;
  for (int period = 0; period < config.periods; ++period) {
    const FairnessShieldTable* table = nullptr;
    std::optional<FairnessShieldTable> dynamic_table;
    if (config.variant == PeriodicVariant::kDynamic) {
      dynamic_table = synth_dynamic(dist, config.prop, config.horizon,
                                    cumulative, config.synth);
      table = &*dynamic_table;
    } else {
      table = &*static_table;
    }

    PeriodSummary summary;
    Counters local;
    for (int t = 0; t < config.horizon; ++t, ++t_global) {
      int group, rec, z = -1;
      double cost;
      if (forced != nullptr) {
        const ForcedInput& in = (*forced)[t_global];
        group = in.group;
        rec = in.rec;
        cost = in.cost;
        z = in.z;
      } else {
        const InputAtom& x = dist.atom(sample_atom());
        group = x.group;
        rec = x.rec;
        cost = x.cost;
        if (eqopp) z = unit(rng) < x.p_z1 ? 1 : 0;
      }

      const ApplyResult applied =
          apply_shield(*table, t, local, group, rec, cost);
      if (applied.pending.has_value()) {
        if (z < 0)
          throw InvalidInput("EqOpp run needs ground-truth labels");
        local = advance_counters_eqopp(local, *applied.pending, z);
        cumulative = advance_counters_eqopp(cumulative, *applied.pending, z);
      } else {
        local = applied.counters;
        cumulative = advance_counters(cumulative, group, applied.decision);
      }
      if (applied.decision != rec) {
        summary.cost += cost;
        run.total_cost += cost;
      }
      run.steps.push_back({t_global, group, rec, cost, applied.decision,
                           eval_property(config.prop, cumulative)});
    }
    summary.local = local;
    summary.cumulative = cumulative;
    summary.local_bias = eval_property(config.prop, local);
    summary.cumulative_bias = eval_property(config.prop, cumulative);
    run.periods.push_back(summary);
  }
  return run;
}

}  // namespace shieldlab::fairness
