#pragma once

#include <functional>

#include "shieldlab/intention/analysis.hpp"

namespace shieldlab::intention {

// Peripheral variable: constant along a trace, varied between
// counterfactual worlds within [lo, hi] (lo == hi pins it). Integer
// variables are sampled uniformly over the integers in range.
struct PeripheralVariable {
  std::string name;
  double reference = 0;
  double lo = 0;
  double hi = 0;
  bool integral_valued = false;
};

struct FactoredScenario {
  std::string name;
  std::vector<PeripheralVariable> peripherals;
  std::vector<std::string> integral_names;
  std::vector<std::vector<int>> integral_trace;  // one row per step
  std::string goal;

  std::vector<double> reference_assignment() const;
  void validate() const;
};

using PeripheralAssignment = std::vector<double>;

// A world rebuilt for one peripheral assignment: the model, the analyzed
// agent in that world, and the reference trace mapped into its state ids
// (empty when some step has no corresponding state).
struct RebuiltModel {
  LabeledMdp model;
  mdp::Policy policy;
  std::vector<int> trace_states;
};

using ModelBuilder = std::function<RebuiltModel(const PeripheralAssignment&)>;

struct CounterfactualTrace {
  PeripheralAssignment assignment;
  std::vector<int> states;
  Aggregate aggregate;  // evaluated in its own world
};

// Uniform rejection sampling of valid counterfactual traces: peripheral
// assignments drawn within their ranges, worlds rebuilt, and traces kept
// when every consecutive pair has a positive-probability action and the
// endpoint satisfies the goal. Duplicated assignments are dropped. Gives
// up after 50 * n rejected attempts and returns what it found.
std::vector<CounterfactualTrace> counterfactual_batch(
    const ModelBuilder& builder, const FactoredScenario& scenario, int n,
    std::uint64_t seed,
    const std::vector<PeripheralAssignment>& already_used = {});

bool trace_is_valid(const LabeledMdp& model, const std::vector<int>& states,
                    const std::vector<int>& goal_states);

struct RetrospectiveOptions {
  int batch_size = 5;
  int max_counterfactuals = 50;
  std::uint64_t seed = 0;
  // Sample `oversample * batch_size` candidates per batch and keep the
  // highest-agency ones; 1 keeps plain uniform sampling.
  int oversample = 1;
};

struct IntentionReport {
  std::vector<CounterfactualTrace> traces;  // reference first
  Aggregate combined;
  Verdict verdict = Verdict::kInsufficient;
  int counterfactual_count = 0;
  std::vector<Aggregate> history;  // combined aggregate after each batch
};

// Evaluates the reference trace and, while the verdict is insufficient and
// budget remains, augments the evidence with counterfactual batches.
IntentionReport retrospective_analysis(const ModelBuilder& builder,
                                       const FactoredScenario& scenario,
                                       const EvidenceThresholds& thresholds,
                                       const RetrospectiveOptions& options);

}  // namespace shieldlab::intention
