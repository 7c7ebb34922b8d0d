#pragma once

#include <string>
#include <vector>

#include "shieldlab/common.hpp"

namespace shieldlab::fairness {

enum class FairnessKind {
  kDemographicParity,
  kEqualOpportunity,
  kDisparateImpact,
};

std::string kind_name(FairnessKind kind);
FairnessKind kind_from_name(const std::string& name);

// Counter abstraction of a trace. For demographic parity and disparate
// impact, (a, a1, b, b1) count appeared/accepted individuals per group.
// For equal opportunity the four counters range over individuals whose
// revealed ground truth is 1, and z0 counts the ground-truth-0 ones (so the
// counters still determine the time). Groups are 0 = a, 1 = b.
struct Counters {
  int a = 0;
  int a1 = 0;
  int b = 0;
  int b1 = 0;
  int z0 = 0;

  Counters operator+(const Counters& o) const {
    return {a + o.a, a1 + o.a1, b + o.b, b1 + o.b1, z0 + o.z0};
  }
  bool operator==(const Counters&) const = default;
};

struct FairnessProperty {
  FairnessKind kind = FairnessKind::kDemographicParity;
  double kappa = 0.1;

  int counter_arity() const {
    return kind == FairnessKind::kEqualOpportunity ? 6 : 4;
  }
};

// Bias value of the property on the given counters. DP and EqOpp return
// |welfare_a - welfare_b|; DI returns the welfare ratio. A welfare with a
// null denominator makes the value 0 by convention.
double eval_property(const FairnessProperty& prop, const Counters& c);

// Whether the counters satisfy the property at threshold kappa. DP/EqOpp
// require bias <= kappa; DI requires the ratio within [kappa, 1/kappa].
bool property_satisfied(const FairnessProperty& prop, const Counters& c);

// Group welfare num/den; returns -1 when the denominator is zero.
double group_welfare(FairnessKind kind, const Counters& c, int group);

// One point of the input space X = G x {0,1} x C together with its
// probability; p_z1 is the ground-truth conditional used by EqOpp.
struct InputAtom {
  int group = 0;
  int rec = 0;
  double cost = 0;
  double prob = 0;
  double p_z1 = -1;  // < 0 when unknown
};

class InputDistribution {
 public:
  InputDistribution() = default;
  explicit InputDistribution(std::vector<InputAtom> atoms);

  const std::vector<InputAtom>& atoms() const { return atoms_; }
  int size() const { return static_cast<int>(atoms_.size()); }
  const InputAtom& atom(int i) const { return atoms_[i]; }

  // Atom with matching group/recommendation and the closest cost.
  int closest_atom(int group, int rec, double cost) const;

  bool has_ground_truth() const;
  void validate() const;

  // Uniform over (group, rec, cost) with the given cost set; optional
  // shared ground-truth rate for EqOpp problems.
  static InputDistribution uniform(const std::vector<double>& costs,
                                   double p_z1 = -1);

 private:
  std::vector<InputAtom> atoms_;
};

// A recorded shield step and the intervention cost of a trace prefix.
struct DecisionStep {
  int group = 0;
  int rec = 0;
  double cost = 0;
  int decision = 0;
  int z = -1;
};

double trace_cost(const std::vector<DecisionStep>& trace, std::size_t up_to);

}  // namespace shieldlab::fairness
