#pragma once

#include <optional>

#include "shieldlab/fairness/property.hpp"

namespace shieldlab::fairness {

// Dense index over the reachable counter vectors per time layer. For
// DP/DI a layer-t cell is (a, a1, b1) with b = t - a; for EqOpp a cell is
// (a, a1, b, b1) with z0 = t - a - b.
class CounterIndexer {
 public:
  CounterIndexer(FairnessKind kind, int horizon);

  FairnessKind kind() const { return kind_; }
  int horizon() const { return horizon_; }
  std::size_t layer_size(int t) const { return layer_sizes_[t]; }
  std::size_t total_cells() const { return total_; }

  std::size_t index(int t, const Counters& c) const;
  Counters decode(int t, std::size_t idx) const;
  bool in_layer(int t, const Counters& c) const;

 private:
  FairnessKind kind_;
  int horizon_;
  std::vector<std::size_t> layer_sizes_;
  // DP: offsets_[t][a]. EqOpp: offsets_[t][a] over the (b, a1, b1) block.
  std::vector<std::vector<std::size_t>> offsets_;
  std::size_t total_ = 0;
};

enum class ShieldVariant { kFinHzn, kStaticBW, kDynamic };

struct PendingReveal {
  int group = 0;
  int decision = 0;
};

// Synthesized cost-minimal fairness shield: per (time, counters, atom) a
// follow/overwrite bit, per (time, counters) an infeasibility bit, and the
// per-layer value function when small enough to keep.
class FairnessShieldTable {
 public:
  FairnessShieldTable(FairnessProperty prop, int horizon,
                      InputDistribution dist, ShieldVariant variant);

  const FairnessProperty& property() const { return prop_; }
  int horizon() const { return horizon_; }
  const InputDistribution& distribution() const { return dist_; }
  ShieldVariant variant() const { return variant_; }
  const CounterIndexer& indexer() const { return indexer_; }

  double root_value() const { return root_value_; }
  bool feasible() const;

  bool cell_infeasible(int t, const Counters& c) const;
  // Final decision for the atom at (t, counters); follows the
  // recommendation on ties and on infeasible cells.
  int decide(int t, const Counters& c, int atom_index) const;

  bool has_values() const { return has_values_; }
  double value_at(int t, const Counters& c) const;

  // Static-BW parameters ([l, u] and the balance requirement N).
  double welfare_lo = 0, welfare_hi = 1;
  int balance_n = 0;
  // Dynamic parameters: prefix counters and their bias.
  Counters prefix;
  double prefix_bias = 0;

  // Mutation interface used by synthesis only.
  void reserve_layers(bool keep_values);
  void set_infeasible(int t, std::size_t cell);
  void set_decision_flip(int t, std::size_t cell, int atom_index);
  void set_value(int t, std::size_t cell, double v);
  void set_root(double v) { root_value_ = v; }

  const std::vector<std::vector<double>>& raw_values() const {
    return values_;
  }
  const std::vector<std::vector<std::uint64_t>>& raw_decisions() const {
    return decisions_;
  }
  const std::vector<std::vector<std::uint64_t>>& raw_infeasible() const {
    return infeasible_;
  }
  std::vector<std::vector<std::uint64_t>>& mutable_decisions() {
    return decisions_;
  }
  std::vector<std::vector<std::uint64_t>>& mutable_infeasible() {
    return infeasible_;
  }

 private:
  FairnessProperty prop_;
  int horizon_;
  InputDistribution dist_;
  ShieldVariant variant_;
  CounterIndexer indexer_;
  bool has_values_ = false;
  double root_value_ = 0;
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<std::uint64_t>> decisions_;
  std::vector<std::vector<std::uint64_t>> infeasible_;
};

// Counter advance for DP/DI: the decision is recorded immediately.
Counters advance_counters(const Counters& c, int group, int decision);
// Counter advance for EqOpp once the pending ground truth is revealed.
Counters advance_counters_eqopp(const Counters& c, const PendingReveal& p,
                                int z);

struct ApplyResult {
  int decision = 0;
  Counters counters;                     // updated (DP/DI), untouched (EqOpp)
  std::optional<PendingReveal> pending;  // EqOpp: resolve via reveal
};

// Looks up the tabled decision for the input and advances the counters
// (EqOpp defers the update to the ground-truth reveal). Throws
// InfeasibleState on infeasible cells.
ApplyResult apply_shield(const FairnessShieldTable& table, int time,
                         const Counters& counters, int group, int rec,
                         double cost);

}  // namespace shieldlab::fairness
