#include "shieldlab/games/game_graph.hpp"

#include <algorithm>

namespace shieldlab::games {

GameGraph::GameGraph(int env_count, int agent_count, int action_count)
    : env_count_(env_count),
      agent_count_(agent_count),
      action_count_(action_count),
      env_succ_(env_count),
      env_label_(env_count),
      agent_succ_(static_cast<std::size_t>(agent_count) * action_count, -1),
      env_safe_(env_count, 1),
      agent_safe_(agent_count, 1) {
  if (env_count < 1 || agent_count < 1)
    throw InvalidInput("game needs at least one state per player");
  if (action_count < 1 || action_count > kMaxActions)
    throw InvalidInput("action alphabet must have size in [1, 64]");
}

void GameGraph::set_initial(int env_state) {
  if (env_state < 0 || env_state >= env_count_)
    throw InvalidInput("initial state out of range");
  initial_ = env_state;
}

void GameGraph::add_env_edge(int env_state, int agent_state, int label) {
  if (env_state < 0 || env_state >= env_count_ || agent_state < 0 ||
      agent_state >= agent_count_)
    throw InvalidInput("environment edge out of range");
  auto& succ = env_succ_[env_state];
  if (std::find(succ.begin(), succ.end(), agent_state) != succ.end()) return;
  succ.push_back(agent_state);
  env_label_[env_state].push_back(
      label >= 0 ? label : static_cast<int>(succ.size()) - 1);
}

void GameGraph::add_agent_edge(int agent_state, int action, int env_state) {
  if (agent_state < 0 || agent_state >= agent_count_ || action < 0 ||
      action >= action_count_ || env_state < 0 || env_state >= env_count_)
    throw InvalidInput("agent edge out of range");
  int& slot = agent_succ_[static_cast<std::size_t>(agent_state) *
                              action_count_ +
                          action];
  if (slot != -1 && slot != env_state)
    throw InvalidInput("agent transition already defined with a different "
                       "successor");
  slot = env_state;
}

void GameGraph::set_env_unsafe(int env_state, bool unsafe) {
  env_safe_[env_state] = unsafe ? 0 : 1;
}

void GameGraph::set_agent_unsafe(int agent_state, bool unsafe) {
  agent_safe_[agent_state] = unsafe ? 0 : 1;
}

ActionMask GameGraph::defined_actions(int agent_state) const {
  ActionMask m = 0;
  const std::size_t base =
      static_cast<std::size_t>(agent_state) * action_count_;
  for (int a = 0; a < action_count_; ++a)
    if (agent_succ_[base + a] != -1) m |= ActionMask{1} << a;
  return m;
}

void GameGraph::validate() const {
  if (initial_ < 0) throw InvalidInput("game has no initial state");
  for (int e = 0; e < env_count_; ++e)
    if (env_succ_[e].empty())
      throw InvalidInput("environment state " + std::to_string(e) +
                         " is a deadlock");
  for (int s = 0; s < agent_count_; ++s)
    if (defined_actions(s) == 0)
      throw InvalidInput("agent state " + std::to_string(s) +
                         " is a deadlock");
}

int GameGraph::max_env_out_degree() const {
  std::size_t deg = 0;
  for (const auto& succ : env_succ_) deg = std::max(deg, succ.size());
  return static_cast<int>(deg);
}

}  // namespace shieldlab::games
