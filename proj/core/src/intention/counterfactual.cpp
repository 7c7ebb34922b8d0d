#include "shieldlab/intention/counterfactual.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace shieldlab::intention {

std::vector<double> FactoredScenario::reference_assignment() const {
  std::vector<double> out;
  for (const PeripheralVariable& v : peripherals) out.push_back(v.reference);
  return out;
}

void FactoredScenario::validate() const {
  for (const PeripheralVariable& v : peripherals) {
    if (!(v.lo <= v.hi))
      throw InvalidInput("peripheral `" + v.name + "` has an empty range");
    if (v.reference < v.lo || v.reference > v.hi)
      throw InvalidInput("peripheral `" + v.name +
                         "` reference outside its range");
  }
  if (integral_trace.empty()) throw InvalidInput("scenario has no trace");
  for (const auto& row : integral_trace)
    if (row.size() != integral_names.size())
      throw InvalidInput("trace row arity mismatch");
  if (goal.empty()) throw InvalidInput("scenario has no goal formula");
}

bool trace_is_valid(const LabeledMdp& model, const std::vector<int>& states,
                    const std::vector<int>& goal_states) {
  if (states.empty()) return false;
  for (int s : states)
    if (s < 0 || s >= model.base().state_count()) return false;
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    bool connected = false;
    for (int a = 0; a < model.base().action_count() && !connected; ++a)
      for (const auto& e : model.base().row(states[i], a))
        if (e.succ == states[i + 1] && e.prob > 0) {
          connected = true;
          break;
        }
    if (!connected) return false;
  }
  return std::find(goal_states.begin(), goal_states.end(), states.back()) !=
         goal_states.end();
}

std::vector<CounterfactualTrace> counterfactual_batch(
    const ModelBuilder& builder, const FactoredScenario& scenario, int n,
    std::uint64_t seed, const std::vector<PeripheralAssignment>& already_used) {
  if (n < 1) throw InvalidInput("batch size must be >= 1");
  scenario.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<PeripheralAssignment> used = already_used;
  std::vector<CounterfactualTrace> found;
  const Formula goal = Formula::parse(scenario.goal);

  const long long max_attempts = 50LL * n;
  long long attempts = 0;
  while (static_cast<int>(found.size()) < n && attempts < max_attempts) {
    ++attempts;
    PeripheralAssignment assignment;
    for (const PeripheralVariable& v : scenario.peripherals) {
      if (v.lo == v.hi) {
        assignment.push_back(v.lo);
      } else if (v.integral_valued) {
        const int lo = static_cast<int>(std::ceil(v.lo));
        const int hi = static_cast<int>(std::floor(v.hi));
        std::uniform_int_distribution<int> pick(lo, hi);
        assignment.push_back(pick(rng));
      } else {
        assignment.push_back(v.lo + unit(rng) * (v.hi - v.lo));
      }
    }
    if (std::find(used.begin(), used.end(), assignment) != used.end())
      continue;
    used.push_back(assignment);

    RebuiltModel world = builder(assignment);
    if (world.trace_states.empty()) continue;
    const std::vector<int> goal_states = world.model.states_of(goal);
    if (!trace_is_valid(world.model, world.trace_states, goal_states))
      continue;
    CounterfactualTrace trace;
    trace.assignment = std::move(assignment);
    trace.states = world.trace_states;
    trace.aggregate = aggregate_from_triple(
        reach_triple(world.model, world.policy, goal_states),
        trace.states);
    found.push_back(std::move(trace));
  }
  return found;
}

namespace {

Aggregate combine(const std::vector<CounterfactualTrace>& traces) {
  // Aggregation over the multiset of all states of all traces, each
  // evaluated in its own world: agency-weighted quotient, plain-mean
  // agency.
  double sigma_sum = 0;
  std::size_t count = 0;
  double weighted = 0;
  double weight = 0;
  for (const CounterfactualTrace& t : traces) {
    const std::size_t states = t.states.size();
    sigma_sum += t.aggregate.sigma * static_cast<double>(states);
    count += states;
    if (t.aggregate.rho.has_value()) {
      // Recover the per-trace weight: mean agency times state count bounds
      // the total agency mass of the trace.
      const double w = t.aggregate.sigma * static_cast<double>(states);
      weighted += w * *t.aggregate.rho;
      weight += w;
    }
  }
  Aggregate agg;
  agg.sigma = count > 0 ? sigma_sum / static_cast<double>(count) : 0.0;
  if (weight > 0) agg.rho = weighted / weight;
  return agg;
}

}  // namespace

IntentionReport retrospective_analysis(const ModelBuilder& builder,
                                       const FactoredScenario& scenario,
                                       const EvidenceThresholds& thresholds,
                                       const RetrospectiveOptions& options) {
  scenario.validate();
  thresholds.validate();
  const Formula goal = Formula::parse(scenario.goal);

  RebuiltModel reference = builder(scenario.reference_assignment());
  const std::vector<int> goal_states = reference.model.states_of(goal);
  if (reference.trace_states.empty() ||
      std::find(goal_states.begin(), goal_states.end(),
                reference.trace_states.back()) == goal_states.end())
    throw InvalidInput("reference trace must end in the goal set");

  IntentionReport report;
  CounterfactualTrace ref;
  ref.assignment = scenario.reference_assignment();
  ref.states = reference.trace_states;
  ref.aggregate = aggregate_from_triple(
      reach_triple(reference.model, reference.policy, goal_states),
      ref.states);
  report.traces.push_back(std::move(ref));

  report.combined = combine(report.traces);
  report.history.push_back(report.combined);
  report.verdict =
      verdict(report.combined.sigma, report.combined.rho, thresholds);

  std::uint64_t batch_seed = options.seed;
  while (report.verdict == Verdict::kInsufficient &&
         report.counterfactual_count < options.max_counterfactuals) {
    const int want = std::min(options.batch_size,
                              options.max_counterfactuals -
                                  report.counterfactual_count);
    std::vector<PeripheralAssignment> used;
    for (const CounterfactualTrace& t : report.traces)
      used.push_back(t.assignment);
    std::vector<CounterfactualTrace> batch = counterfactual_batch(
        builder, scenario, want * std::max(1, options.oversample),
        ++batch_seed, used);
    if (batch.empty()) break;
    if (static_cast<int>(batch.size()) > want) {
      std::sort(batch.begin(), batch.end(),
                [](const CounterfactualTrace& l, const CounterfactualTrace& r) {
                  return l.aggregate.sigma > r.aggregate.sigma;
                });
      batch.resize(want);
    }
    for (CounterfactualTrace& t : batch) {
      report.traces.push_back(std::move(t));
      ++report.counterfactual_count;
    }
    report.combined = combine(report.traces);
    report.history.push_back(report.combined);
    report.verdict =
        verdict(report.combined.sigma, report.combined.rho, thresholds);
  }
  return report;
}

}  // namespace shieldlab::intention
