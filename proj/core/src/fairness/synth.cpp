#include "shieldlab/fairness/synth.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace shieldlab::fairness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using BaseCase = std::function<bool(const Counters&)>;

// Enumerates the cells of a time layer in indexer order.
template <typename Fn>
void for_each_cell(FairnessKind kind, int t, Fn&& fn) {
  Counters c;
  if (kind == FairnessKind::kEqualOpportunity) {
    for (c.a = 0; c.a <= t; ++c.a)
      for (c.b = 0; c.b <= t - c.a; ++c.b) {
        c.z0 = t - c.a - c.b;
        for (c.a1 = 0; c.a1 <= c.a; ++c.a1)
          for (c.b1 = 0; c.b1 <= c.b; ++c.b1) fn(c);
      }
  } else {
    for (c.a = 0; c.a <= t; ++c.a) {
      c.b = t - c.a;
      for (c.a1 = 0; c.a1 <= c.a; ++c.a1)
        for (c.b1 = 0; c.b1 <= c.b; ++c.b1) fn(c);
    }
  }
}

FairnessShieldTable synthesize(const InputDistribution& dist,
                               const FairnessProperty& prop, int horizon,
                               ShieldVariant variant, const BaseCase& fair_at_end,
                               const SynthOptions& options) {
  dist.validate();
  if (prop.kind == FairnessKind::kEqualOpportunity && !dist.has_ground_truth())
    throw InvalidConfig("EqOpp synthesis needs p_z1 on every atom");

  FairnessShieldTable table(prop, horizon, dist, variant);
  const CounterIndexer& idx = table.indexer();
  table.reserve_layers(idx.total_cells() <= options.keep_values_cell_limit);

  std::vector<double> next(idx.layer_size(horizon));
  {
    std::size_t cell = 0;
    for_each_cell(prop.kind, horizon, [&](const Counters& c) {
      const double v = fair_at_end(c) ? 0.0 : kInf;
      next[cell] = v;
      if (v == kInf) table.set_infeasible(horizon, cell);
      table.set_value(horizon, cell, v);
      ++cell;
    });
  }

  const bool eqopp = prop.kind == FairnessKind::kEqualOpportunity;
  std::vector<double> cur;
  for (int t = horizon - 1; t >= 0; --t) {
    cur.assign(idx.layer_size(t), 0.0);
    std::size_t cell = 0;
    for_each_cell(prop.kind, t, [&](const Counters& c) {
      double acc = 0;
      for (int i = 0; i < dist.size(); ++i) {
        const InputAtom& x = dist.atom(i);
        double branch[2];  // cost-free continuation per decision y
        for (int y = 0; y < 2; ++y) {
          if (eqopp) {
            const Counters on_z1 =
                advance_counters_eqopp(c, PendingReveal{x.group, y}, 1);
            Counters on_z0 = c;
            on_z0.z0 += 1;
            branch[y] = x.p_z1 * next[idx.index(t + 1, on_z1)] +
                        (1.0 - x.p_z1) * next[idx.index(t + 1, on_z0)];
          } else {
            branch[y] = next[idx.index(t + 1, advance_counters(c, x.group, y))];
          }
        }
        const double follow = branch[x.rec];
        const double flip = branch[1 - x.rec] + x.cost;
        double best = follow;
        if (flip < follow) {
          best = flip;
          table.set_decision_flip(t, cell, i);
        }
        if (x.prob > 0) acc += x.prob * best;
      }
      cur[cell] = acc;
      if (!(acc < kInf)) table.set_infeasible(t, cell);
      table.set_value(t, cell, acc);
      ++cell;
    });
    next.swap(cur);
  }

  table.set_root(next[0]);
  return table;
}

}  // namespace

FairnessShieldTable synth_finhzn(const InputDistribution& dist,
                                 const FairnessProperty& prop, int horizon,
                                 const SynthOptions& options) {
  return synthesize(dist, prop, horizon, ShieldVariant::kFinHzn,
                    [&prop](const Counters& c) {
                      return property_satisfied(prop, c);
                    },
                    options);
}

FairnessShieldTable synth_static_bw(const InputDistribution& dist,
                                    FairnessKind kind, double welfare_lo,
                                    double welfare_hi, int horizon,
                                    const SynthOptions& options) {
  if (kind == FairnessKind::kDisparateImpact)
    throw InvalidConfig(
        "disparate impact is not a difference-of-ratios property; periodic "
        "constructions are not defined for it");
  if (!(welfare_lo >= 0.0) || !(welfare_lo < welfare_hi) ||
      !(welfare_hi <= 1.0))
    throw InvalidConfig("need 0 <= l < u <= 1");
  const int n_required = bw_balance_requirement(welfare_lo, welfare_hi);

  FairnessProperty prop{kind, welfare_hi - welfare_lo};
  FairnessShieldTable table = synthesize(
      dist, prop, horizon, ShieldVariant::kStaticBW,
      [&](const Counters& c) {
        if (c.a < n_required || c.b < n_required) return true;  // exempt
        const double wa = group_welfare(kind, c, 0);
        const double wb = group_welfare(kind, c, 1);
        return wa >= welfare_lo && wa <= welfare_hi && wb >= welfare_lo &&
               wb <= welfare_hi;
      },
      options);
  table.welfare_lo = welfare_lo;
  table.welfare_hi = welfare_hi;
  table.balance_n = n_required;
  return table;
}

FairnessShieldTable synth_dynamic(const InputDistribution& dist,
                                  const FairnessProperty& prop, int horizon,
                                  const Counters& prefix,
                                  const SynthOptions& options) {
  if (prop.kind == FairnessKind::kDisparateImpact)
    throw InvalidConfig(
        "disparate impact is not a difference-of-ratios property; periodic "
        "constructions are not defined for it");
  if (prefix == Counters{}) {
    FairnessShieldTable table = synth_finhzn(dist, prop, horizon, options);
    return table;
  }
  const double prefix_bias = eval_property(prop, prefix);
  FairnessShieldTable table = synthesize(
      dist, prop, horizon, ShieldVariant::kDynamic,
      [&](const Counters& c) {
        const Counters total = prefix + c;
        if (property_satisfied(prop, total)) return true;
        // Feasibility assumption on the completed trace; suffixes outside
        // it are exempted rather than charged.
        if (total.a == 0 || total.b == 0) return true;
        const double load = 1.0 / total.a + 1.0 / total.b;
        return load > prop.kappa + prefix_bias;
      },
      options);
  table.prefix = prefix;
  table.prefix_bias = prefix_bias;
  return table;
}

double expected_cost(const FairnessShieldTable& table,
                     const InputDistribution& dist, int from_time,
                     const Counters& from) {
  const CounterIndexer& idx = table.indexer();
  const int horizon = table.horizon();
  if (from_time < 0 || from_time > horizon)
    throw InvalidInput("start time out of range");
  const FairnessKind kind = table.property().kind;
  const bool eqopp = kind == FairnessKind::kEqualOpportunity;

  std::vector<double> next(idx.layer_size(horizon));
  {
    std::size_t cell = 0;
    for_each_cell(kind, horizon, [&](const Counters& c) {
      next[cell] = table.cell_infeasible(horizon, c) ? kInf : 0.0;
      ++cell;
    });
  }
  std::vector<double> cur;
  for (int t = horizon - 1; t >= from_time; --t) {
    cur.assign(idx.layer_size(t), 0.0);
    std::size_t cell = 0;
    for_each_cell(kind, t, [&](const Counters& c) {
      if (table.cell_infeasible(t, c)) {
        cur[cell] = kInf;
        ++cell;
        return;
      }
      double acc = 0;
      for (int i = 0; i < dist.size(); ++i) {
        const InputAtom& x = dist.atom(i);
        if (x.prob <= 0) continue;
        const int y = table.decide(t, c, i);
        double continuation;
        if (eqopp) {
          const Counters on_z1 =
              advance_counters_eqopp(c, PendingReveal{x.group, y}, 1);
          Counters on_z0 = c;
          on_z0.z0 += 1;
          continuation = x.p_z1 * next[idx.index(t + 1, on_z1)] +
                         (1.0 - x.p_z1) * next[idx.index(t + 1, on_z0)];
        } else {
          continuation = next[idx.index(t + 1, advance_counters(c, x.group, y))];
        }
        acc += x.prob * ((y != x.rec ? x.cost : 0.0) + continuation);
      }
      cur[cell] = acc;
      ++cell;
    });
    next.swap(cur);
  }
  return next[idx.index(from_time, from)];
}

double balance_probability(int horizon, double p, int n_required) {
  if (horizon < 0 || n_required < 0)
    throw InvalidInput("balance probability needs T >= 0 and N >= 0");
  if (p < 0.0 || p > 1.0) throw InvalidInput("p must be in [0, 1]");
  double total = 0;
  for (int k = n_required; k <= horizon - n_required; ++k) {
    double log_term = std::lgamma(horizon + 1.0) - std::lgamma(k + 1.0) -
                      std::lgamma(horizon - k + 1.0);
    if (p == 0.0 || p == 1.0) {
      const bool nonzero = (p == 0.0 && k == 0) || (p == 1.0 && k == horizon);
      total += nonzero ? 1.0 : 0.0;
      continue;
    }
    log_term += k * std::log(p) + (horizon - k) * std::log1p(-p);
    total += std::exp(log_term);
  }
  return std::min(total, 1.0);
}

int bw_balance_requirement(double welfare_lo, double welfare_hi) {
  if (!(welfare_lo < welfare_hi))
    throw InvalidConfig("need welfare_lo < welfare_hi");
  return static_cast<int>(std::ceil(1.0 / (welfare_hi - welfare_lo)));
}

bool bw_balanced_traces_exist(int horizon, double welfare_lo,
                              double welfare_hi) {
  return 2 * bw_balance_requirement(welfare_lo, welfare_hi) <= horizon;
}

}  // namespace shieldlab::fairness
