#include "shieldlab/fairness/table.hpp"

#include <cmath>

namespace shieldlab::fairness {

CounterIndexer::CounterIndexer(FairnessKind kind, int horizon)
    : kind_(kind), horizon_(horizon) {
  if (horizon < 0) throw InvalidConfig("horizon must be >= 0");
  layer_sizes_.resize(horizon + 1);
  offsets_.resize(horizon + 1);
  for (int t = 0; t <= horizon; ++t) {
    auto& offs = offsets_[t];
    offs.assign(t + 2, 0);
    std::size_t acc = 0;
    for (int a = 0; a <= t; ++a) {
      offs[a] = acc;
      if (kind_ == FairnessKind::kEqualOpportunity) {
        // Block for fixed a: b in [0, t-a], cells (a1, b1).
        for (int b = 0; b <= t - a; ++b)
          acc += static_cast<std::size_t>(a + 1) * (b + 1);
      } else {
        const int b = t - a;
        acc += static_cast<std::size_t>(a + 1) * (b + 1);
      }
    }
    offs[t + 1] = acc;
    layer_sizes_[t] = acc;
    total_ += acc;
  }
}

bool CounterIndexer::in_layer(int t, const Counters& c) const {
  if (c.a < 0 || c.b < 0 || c.a1 < 0 || c.b1 < 0 || c.z0 < 0) return false;
  if (c.a1 > c.a || c.b1 > c.b) return false;
  if (kind_ == FairnessKind::kEqualOpportunity)
    return c.a + c.b + c.z0 == t;
  return c.z0 == 0 && c.a + c.b == t;
}

std::size_t CounterIndexer::index(int t, const Counters& c) const {
  if (!in_layer(t, c))
    throw InvalidInput("counters not reachable at time " + std::to_string(t));
  if (kind_ == FairnessKind::kEqualOpportunity) {
    std::size_t idx = offsets_[t][c.a];
    // Within the block of fixed a: skip full (a1, b1) grids of smaller b.
    idx += static_cast<std::size_t>(c.a + 1) *
           (static_cast<std::size_t>(c.b) * (c.b + 1) / 2);
    idx += static_cast<std::size_t>(c.a1) * (c.b + 1) + c.b1;
    return idx;
  }
  return offsets_[t][c.a] +
         static_cast<std::size_t>(c.a1) * (t - c.a + 1) + c.b1;
}

Counters CounterIndexer::decode(int t, std::size_t idx) const {
  Counters c;
  int a = 0;
  while (a + 1 <= t && offsets_[t][a + 1] <= idx) ++a;
  c.a = a;
  std::size_t rest = idx - offsets_[t][a];
  if (kind_ == FairnessKind::kEqualOpportunity) {
    int b = 0;
    while (static_cast<std::size_t>(a + 1) *
               (static_cast<std::size_t>(b + 1) * (b + 2) / 2) <=
           rest)
      ++b;
    c.b = b;
    rest -= static_cast<std::size_t>(a + 1) *
            (static_cast<std::size_t>(b) * (b + 1) / 2);
    c.a1 = static_cast<int>(rest / (b + 1));
    c.b1 = static_cast<int>(rest % (b + 1));
    c.z0 = t - a - b;
  } else {
    c.b = t - a;
    c.a1 = static_cast<int>(rest / (c.b + 1));
    c.b1 = static_cast<int>(rest % (c.b + 1));
  }
  return c;
}

FairnessShieldTable::FairnessShieldTable(FairnessProperty prop, int horizon,
                                         InputDistribution dist,
                                         ShieldVariant variant)
    : prop_(prop),
      horizon_(horizon),
      dist_(std::move(dist)),
      variant_(variant),
      indexer_(prop.kind, horizon) {
  if (horizon < 1) throw InvalidConfig("horizon must be >= 1");
  dist_.validate();
}

void FairnessShieldTable::reserve_layers(bool keep_values) {
  has_values_ = keep_values;
  const int atoms = dist_.size();
  decisions_.resize(horizon_);
  infeasible_.resize(horizon_ + 1);
  if (keep_values) values_.resize(horizon_ + 1);
  for (int t = 0; t <= horizon_; ++t) {
    const std::size_t cells = indexer_.layer_size(t);
    infeasible_[t].assign((cells + 63) / 64, 0);
    if (t < horizon_)
      decisions_[t].assign((cells * atoms + 63) / 64, 0);
    if (keep_values)
      values_[t].assign(cells, 0.0);
  }
}

void FairnessShieldTable::set_infeasible(int t, std::size_t cell) {
  infeasible_[t][cell / 64] |= std::uint64_t{1} << (cell % 64);
}

void FairnessShieldTable::set_decision_flip(int t, std::size_t cell,
                                            int atom_index) {
  const std::size_t bit = cell * dist_.size() + atom_index;
  decisions_[t][bit / 64] |= std::uint64_t{1} << (bit % 64);
}

void FairnessShieldTable::set_value(int t, std::size_t cell, double v) {
  if (has_values_) values_[t][cell] = v;
}

bool FairnessShieldTable::feasible() const {
  return std::isfinite(root_value_);
}

bool FairnessShieldTable::cell_infeasible(int t, const Counters& c) const {
  const std::size_t cell = indexer_.index(t, c);
  return (infeasible_[t][cell / 64] >> (cell % 64)) & 1u;
}

int FairnessShieldTable::decide(int t, const Counters& c,
                                int atom_index) const {
  if (t < 0 || t >= horizon_)
    throw InvalidInput("decision time out of range");
  const std::size_t cell = indexer_.index(t, c);
  const std::size_t bit = cell * dist_.size() + atom_index;
  const bool flip = (decisions_[t][bit / 64] >> (bit % 64)) & 1u;
  const int rec = dist_.atom(atom_index).rec;
  return flip ? 1 - rec : rec;
}

double FairnessShieldTable::value_at(int t, const Counters& c) const {
  if (!has_values_)
    throw InvalidConfig("value table was not kept for this horizon");
  return values_[t][indexer_.index(t, c)];
}

Counters advance_counters(const Counters& c, int group, int decision) {
  Counters n = c;
  if (group == 0) {
    n.a += 1;
    n.a1 += decision;
  } else {
    n.b += 1;
    n.b1 += decision;
  }
  return n;
}

Counters advance_counters_eqopp(const Counters& c, const PendingReveal& p,
                                int z) {
  Counters n = c;
  if (z == 0) {
    n.z0 += 1;
    return n;
  }
  if (p.group == 0) {
    n.a += 1;
    n.a1 += p.decision;
  } else {
    n.b += 1;
    n.b1 += p.decision;
  }
  return n;
}

ApplyResult apply_shield(const FairnessShieldTable& table, int time,
                         const Counters& counters, int group, int rec,
                         double cost) {
  if (table.cell_infeasible(time, counters))
    throw InfeasibleState("shield applied at an infeasible cell");
  const int atom = table.distribution().closest_atom(group, rec, cost);
  const int decision = table.decide(time, counters, atom);
  ApplyResult result;
  result.decision = decision;
  if (table.property().kind == FairnessKind::kEqualOpportunity) {
    result.counters = counters;
    result.pending = PendingReveal{group, decision};
  } else {
    result.counters = advance_counters(counters, group, decision);
  }
  return result;
}

}  // namespace shieldlab::fairness
