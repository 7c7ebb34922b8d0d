#pragma once

#include <string>
#include <vector>

#include "shieldlab/common.hpp"

namespace shieldlab::games {

// Two-player deterministic safety game on a bipartite graph. Environment
// states and agent states live in separate dense id ranges. Environment
// moves are unlabeled edges (labels can be attached for bookkeeping and are
// auto-generated per source state when absent); agent moves are labeled by
// actions and deterministic per (state, action).
class GameGraph {
 public:
  GameGraph(int env_count, int agent_count, int action_count);

  int env_count() const { return env_count_; }
  int agent_count() const { return agent_count_; }
  int action_count() const { return action_count_; }

  void set_initial(int env_state);
  int initial() const { return initial_; }

  // Adds an environment edge env -> agent. Duplicate (env, agent) pairs are
  // collapsed: the transition relation is a set of state pairs.
  void add_env_edge(int env_state, int agent_state, int label = -1);

  // Defines the agent transition (agent, action) -> env. Each pair may be
  // defined once.
  void add_agent_edge(int agent_state, int action, int env_state);

  void set_env_unsafe(int env_state, bool unsafe = true);
  void set_agent_unsafe(int agent_state, bool unsafe = true);

  bool env_safe(int s) const { return env_safe_[s]; }
  bool agent_safe(int s) const { return agent_safe_[s]; }

  const std::vector<int>& env_successors(int env_state) const {
    return env_succ_[env_state];
  }
  const std::vector<int>& env_labels(int env_state) const {
    return env_label_[env_state];
  }

  // -1 when (agent, action) is undefined.
  int agent_successor(int agent_state, int action) const {
    return agent_succ_[static_cast<std::size_t>(agent_state) * action_count_ +
                       action];
  }

  ActionMask defined_actions(int agent_state) const;

  // Checks deadlock freedom and initial-state validity; throws on failure.
  void validate() const;

  int max_env_out_degree() const;

 private:
  int env_count_;
  int agent_count_;
  int action_count_;
  int initial_ = -1;
  std::vector<std::vector<int>> env_succ_;
  std::vector<std::vector<int>> env_label_;
  std::vector<int> agent_succ_;
  std::vector<std::uint8_t> env_safe_;
  std::vector<std::uint8_t> agent_safe_;
};

}  // namespace shieldlab::games
