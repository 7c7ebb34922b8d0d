#pragma once

#include <map>
#include <random>
#include <vector>

#include "shieldlab/games/game_graph.hpp"

namespace testutil {

// Random action-total safety game: every agent action defined, every
// environment state with 1..max_branch successors, a few unsafe states.
inline shieldlab::games::GameGraph random_game(std::mt19937_64& rng,
                                               int max_states,
                                               int max_actions,
                                               int max_branch = 3) {
  std::uniform_int_distribution<int> nstates(2, max_states);
  std::uniform_int_distribution<int> nactions(1, max_actions);
  const int ne = nstates(rng);
  const int na = nstates(rng);
  const int act = nactions(rng);
  shieldlab::games::GameGraph game(ne, na, act);

  std::uniform_int_distribution<int> env_pick(0, ne - 1);
  std::uniform_int_distribution<int> agent_pick(0, na - 1);
  std::uniform_int_distribution<int> branch(1, max_branch);
  for (int s = 0; s < na; ++s)
    for (int a = 0; a < act; ++a) game.add_agent_edge(s, a, env_pick(rng));
  for (int e = 0; e < ne; ++e) {
    const int succ = branch(rng);
    for (int i = 0; i < succ; ++i) game.add_env_edge(e, agent_pick(rng));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int e = 0; e < ne; ++e)
    if (unit(rng) < 0.15) game.set_env_unsafe(e);
  for (int s = 0; s < na; ++s)
    if (unit(rng) < 0.15) game.set_agent_unsafe(s);
  game.set_initial(env_pick(rng));
  game.validate();
  return game;
}

// Naive backward-induction winning region, independent of the library
// solver: iterate removal until stable, no worklists.
struct NaiveRegion {
  std::vector<bool> env;
  std::vector<bool> agent;
};

inline NaiveRegion naive_winning_region(const shieldlab::games::GameGraph& g) {
  NaiveRegion w;
  w.env.resize(g.env_count());
  w.agent.resize(g.agent_count());
  for (int e = 0; e < g.env_count(); ++e) w.env[e] = g.env_safe(e);
  for (int s = 0; s < g.agent_count(); ++s) w.agent[s] = g.agent_safe(s);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < g.env_count(); ++e) {
      if (!w.env[e]) continue;
      for (int s : g.env_successors(e))
        if (!w.agent[s]) {
          w.env[e] = false;
          changed = true;
          break;
        }
    }
    for (int s = 0; s < g.agent_count(); ++s) {
      if (!w.agent[s]) continue;
      bool ok = false;
      for (int a = 0; a < g.action_count(); ++a) {
        const int e = g.agent_successor(s, a);
        if (e != -1 && w.env[e]) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        w.agent[s] = false;
        changed = true;
      }
    }
  }
  return w;
}

}  // namespace testutil
