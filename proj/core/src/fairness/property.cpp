#include "shieldlab/fairness/property.hpp"

#include <cmath>

namespace shieldlab::fairness {

std::string kind_name(FairnessKind kind) {
  switch (kind) {
    case FairnessKind::kDemographicParity:
      return "dp";
    case FairnessKind::kEqualOpportunity:
      return "eqopp";
    case FairnessKind::kDisparateImpact:
      return "di";
  }
  return "?";
}

FairnessKind kind_from_name(const std::string& name) {
  if (name == "dp") return FairnessKind::kDemographicParity;
  if (name == "eqopp") return FairnessKind::kEqualOpportunity;
  if (name == "di") return FairnessKind::kDisparateImpact;
  throw InvalidConfig("unknown fairness property `" + name + "`");
}

double group_welfare(FairnessKind, const Counters& c, int group) {
  const int den = group == 0 ? c.a : c.b;
  const int num = group == 0 ? c.a1 : c.b1;
  if (den == 0) return -1;
  return static_cast<double>(num) / den;
}

double eval_property(const FairnessProperty& prop, const Counters& c) {
  const double wa = group_welfare(prop.kind, c, 0);
  const double wb = group_welfare(prop.kind, c, 1);
  if (wa < 0 || wb < 0) return 0.0;
  switch (prop.kind) {
    case FairnessKind::kDemographicParity:
    case FairnessKind::kEqualOpportunity:
      return std::abs(wa - wb);
    case FairnessKind::kDisparateImpact:
      if (wb == 0.0) return 0.0;
      return wa / wb;
  }
  return 0.0;
}

bool property_satisfied(const FairnessProperty& prop, const Counters& c) {
  const double value = eval_property(prop, c);
  if (prop.kind != FairnessKind::kDisparateImpact)
    return value <= prop.kappa;
  if (prop.kappa <= 0.0) return true;
  const double wa = group_welfare(prop.kind, c, 0);
  const double wb = group_welfare(prop.kind, c, 1);
  if (wa < 0 || wb < 0) return false;
  return value >= prop.kappa && value <= 1.0 / prop.kappa;
}

InputDistribution::InputDistribution(std::vector<InputAtom> atoms)
    : atoms_(std::move(atoms)) {
  validate();
}

int InputDistribution::closest_atom(int group, int rec, double cost) const {
  int best = -1;
  for (int i = 0; i < size(); ++i) {
    const InputAtom& x = atoms_[i];
    if (x.group != group || x.rec != rec) continue;
    if (best == -1 ||
        std::abs(x.cost - cost) < std::abs(atoms_[best].cost - cost))
      best = i;
  }
  if (best == -1)
    throw InvalidInput("no atom with group " + std::to_string(group) +
                       " and recommendation " + std::to_string(rec));
  return best;
}

bool InputDistribution::has_ground_truth() const {
  for (const InputAtom& x : atoms_)
    if (x.p_z1 < 0) return false;
  return !atoms_.empty();
}

void InputDistribution::validate() const {
  if (atoms_.empty()) throw InvalidInput("empty input distribution");
  double sum = 0;
  for (const InputAtom& x : atoms_) {
    if (x.group != 0 && x.group != 1)
      throw InvalidInput("atom group must be 0 (a) or 1 (b)");
    if (x.rec != 0 && x.rec != 1)
      throw InvalidInput("atom recommendation must be 0 or 1");
    if (x.cost < 0) throw InvalidInput("atom cost must be >= 0");
    if (x.prob < 0) throw InvalidInput("atom probability must be >= 0");
    if (x.p_z1 > 1) throw InvalidInput("atom p_z1 must be <= 1");
    sum += x.prob;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw InvalidInput("atom probabilities sum to " + std::to_string(sum));
}

InputDistribution InputDistribution::uniform(const std::vector<double>& costs,
                                             double p_z1) {
  if (costs.empty()) throw InvalidInput("cost set must be nonempty");
  std::vector<InputAtom> atoms;
  const double p = 1.0 / (4.0 * static_cast<double>(costs.size()));
  for (int g = 0; g < 2; ++g)
    for (int r = 0; r < 2; ++r)
      for (double c : costs) atoms.push_back({g, r, c, p, p_z1});
  return InputDistribution(std::move(atoms));
}

double trace_cost(const std::vector<DecisionStep>& trace, std::size_t up_to) {
  if (up_to > trace.size())
    throw InvalidInput("cost prefix longer than the trace");
  double total = 0;
  for (std::size_t i = 0; i < up_to; ++i)
    if (trace[i].decision != trace[i].rec) total += trace[i].cost;
  return total;
}

}  // namespace shieldlab::fairness
