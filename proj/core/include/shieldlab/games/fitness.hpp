#pragma once

#include <map>
#include <vector>

#include "shieldlab/games/solver.hpp"

namespace shieldlab::games {

// Multiset of agent states reachable from `s` in `k` agent steps; each
// endpoint is counted once per distinct witnessing path (interior states
// and actions). The register fixes the last |reg| actions of the path in
// chronological order; earlier actions are free.
struct ForwardMultiset {
  std::map<int, long long> counts;
  long long total = 0;
};

ForwardMultiset forward_multiset(const GameGraph& game, int agent_state,
                                 const Register& reg, int k);

enum class FitnessKind { kRobustness, kControllability };

struct FitnessTable {
  FitnessKind kind;
  // One value per agent state. Robustness uses kUnbounded when the winning
  // region cannot be exited; controllability uses -1 outside the region.
  std::vector<int> values;
};

// Least number of agent steps from each agent state to a path endpoint
// outside the winning region; 0 for states already outside.
FitnessTable robustness_values(const GameGraph& game);

// Largest delay <= delta_max at which each agent state still has some
// register with a nonempty strategy entry; -1 outside the winning region.
FitnessTable controllability_values(const GameGraph& game, int memory,
                                    int delta_max);

// Deterministic strategy choosing, per (state, register) with a nonempty
// allowed set, the allowed action with the best mean fitness over the
// (delay+1)-forward multiset; ties go to the lowest action id. Entries with
// an empty allowed set hold -1.
struct Determinization {
  int memory = 0;
  int action_count = 0;
  std::vector<int> choice;  // agent_count * |Act|^memory

  int at(int agent_state, const Register& reg) const;
};

Determinization determinize_max_fitness(const MaxPermStrategy& strategy,
                                        const FitnessTable& fitness,
                                        const GameGraph& game);

// Mean fitness over the (k)-forward multiset, exposed for inspection and
// tests. Unbounded robustness values saturate at a large finite constant.
double expected_fitness(const GameGraph& game, const FitnessTable& fitness,
                        int agent_state, const Register& reg, int k);

}  // namespace shieldlab::games
