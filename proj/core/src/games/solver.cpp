#include "shieldlab/games/solver.hpp"

#include <algorithm>
#include <cmath>

namespace shieldlab::games {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_action_total(const GameGraph& game) {
  const ActionMask all = full_mask(game.action_count());
  for (int s = 0; s < game.agent_count(); ++s)
    if (game.defined_actions(s) != all)
      throw InvalidInput(
          "delayed solving requires an action-total game (agent state " +
          std::to_string(s) + " has undefined actions)");
}

}  // namespace

std::size_t register_code(const Register& reg, int action_count) {
  std::size_t code = 0;
  std::size_t mult = 1;
  for (int a : reg) {
    code += static_cast<std::size_t>(a) * mult;
    mult *= action_count;
  }
  return code;
}

ActionMask MaxPermStrategy::steady_at(int agent_state,
                                      const Register& reg) const {
  if (static_cast<int>(reg.size()) != memory)
    throw InvalidInput("steady-state query requires a register of length " +
                       std::to_string(memory));
  const std::size_t regs = ipow(action_count, memory);
  return steady[static_cast<std::size_t>(agent_state) * regs +
                register_code(reg, action_count)];
}

ActionMask MaxPermStrategy::transient_at(const Register& reg) const {
  if (reg.size() >= transient.size() || transient[reg.size()].empty())
    throw InvalidInput("no transient entry for a register of length " +
                       std::to_string(reg.size()));
  return transient[reg.size()][register_code(reg, action_count)];
}

bool MaxPermStrategy::all_empty() const {
  return std::all_of(steady.begin(), steady.end(),
                     [](ActionMask m) { return m == 0; });
}

MaxPermStrategy solve_perfect_info(const GameGraph& game) {
  game.validate();
  const int ne = game.env_count();
  const int na = game.agent_count();
  const int act = game.action_count();

  std::vector<std::uint8_t> env_win(ne), agent_win(na);
  for (int e = 0; e < ne; ++e) env_win[e] = game.env_safe(e);
  for (int s = 0; s < na; ++s) agent_win[s] = game.agent_safe(s);

  // Greatest fixed point: agent states need one action into the region,
  // environment states need all successors inside it.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < ne; ++e) {
      if (!env_win[e]) continue;
      for (int s : game.env_successors(e)) {
        if (!agent_win[s]) {
          env_win[e] = 0;
          changed = true;
          break;
        }
      }
    }
    for (int s = 0; s < na; ++s) {
      if (!agent_win[s]) continue;
      bool has_safe_action = false;
      for (int a = 0; a < act; ++a) {
        const int e = game.agent_successor(s, a);
        if (e != -1 && env_win[e]) {
          has_safe_action = true;
          break;
        }
      }
      if (!has_safe_action) {
        agent_win[s] = 0;
        changed = true;
      }
    }
  }

  MaxPermStrategy st;
  st.delay = 0;
  st.memory = 0;
  st.action_count = act;
  st.agent_count = na;
  st.steady.assign(na, 0);
  st.transient.assign(1, std::vector<ActionMask>(1, 0));
  st.winning.resize(ne + na);
  for (int e = 0; e < ne; ++e) st.winning[e] = env_win[e];
  for (int s = 0; s < na; ++s) st.winning[ne + s] = agent_win[s];

  for (int s = 0; s < na; ++s) {
    if (!agent_win[s]) continue;
    ActionMask m = 0;
    for (int a = 0; a < act; ++a) {
      const int e = game.agent_successor(s, a);
      if (e != -1 && env_win[e]) m |= ActionMask{1} << a;
    }
    st.steady[s] = m;
  }
  return st;
}

namespace {

// Shrink: remove an action from an entry when some successor entry it can
// lead to is empty, and iterate until closure. Successor observations come
// from the oldest register action when the memory is full, and from any
// action otherwise.
void shrink_layer(const GameGraph& game, int m, bool full_memory,
                  const std::vector<std::vector<int>>& any_action_obs,
                  std::vector<ActionMask>& table) {
  const int na = game.agent_count();
  const int act = game.action_count();
  const std::size_t regs = ipow(act, m);
  const std::size_t newest_mult = m > 0 ? ipow(act, m - 1) : 1;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < na; ++s) {
      for (std::size_t code = 0; code < regs; ++code) {
        ActionMask& entry = table[static_cast<std::size_t>(s) * regs + code];
        if (entry == 0) continue;
        const std::size_t tail = m > 0 ? code / act : 0;
        ActionMask bad = 0;
        for (int y = 0; y < act; ++y) {
          if (!mask_has(entry, y)) continue;
          const std::size_t next_code =
              m > 0 ? tail + static_cast<std::size_t>(y) * newest_mult : 0;
          bool dead = false;
          if (full_memory) {
            const int oldest = static_cast<int>(code % act);
            const int e = game.agent_successor(s, oldest);
            for (int nxt : game.env_successors(e)) {
              if (table[static_cast<std::size_t>(nxt) * regs + next_code] ==
                  0) {
                dead = true;
                break;
              }
            }
          } else {
            for (int nxt : any_action_obs[s]) {
              if (table[static_cast<std::size_t>(nxt) * regs + next_code] ==
                  0) {
                dead = true;
                break;
              }
            }
          }
          if (dead) bad |= ActionMask{1} << y;
        }
        if (bad != 0) {
          entry &= ~bad;
          changed = true;
        }
      }
    }
  }
}

// Transient entries for the final layer. For memory == delay the register
// grows by one per blind step, so each entry is consulted at exactly one
// step. For memory < delay the full register slides through several blind
// steps under the same unobserved state; an action is kept only if it is
// safe at every step the entry may be consulted.
void compute_transient(const GameGraph& game, MaxPermStrategy& st) {
  const int act = st.action_count;
  const int m = st.memory;
  const int delay = st.delay;
  st.transient.assign(static_cast<std::size_t>(m) + 1, {});
  if (delay == 0) {
    st.transient.resize(1);
    st.transient[0].assign(1, 0);
    return;
  }

  const std::vector<int>& first_obs = game.env_successors(game.initial());
  const std::size_t regs = ipow(act, m);
  const std::size_t newest_mult = m > 0 ? ipow(act, m - 1) : 1;

  // Nonempty steady entry for every possible first observation.
  auto observed_ok = [&](std::size_t code) {
    for (int s : first_obs)
      if (st.steady[static_cast<std::size_t>(s) * regs + code] == 0)
        return false;
    return true;
  };

  std::vector<ActionMask> full_entries(regs, 0);
  if (m == delay) {
    // The register reaches full length exactly when the first observation
    // arrives, so full-length entries at epsilon are never consulted.
  } else {
    // Sliding phase: greatest fixed point over full registers.
    const bool more_blind_steps = delay - m >= 2;
    for (std::size_t code = 0; code < regs; ++code)
      full_entries[code] = full_mask(act);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t code = 0; code < regs; ++code) {
        ActionMask& entry = full_entries[code];
        if (entry == 0) continue;
        const std::size_t tail = m > 0 ? code / act : 0;
        ActionMask keep = 0;
        for (int y = 0; y < act; ++y) {
          if (!mask_has(entry, y)) continue;
          const std::size_t next =
              m > 0 ? tail + static_cast<std::size_t>(y) * newest_mult : 0;
          bool ok = observed_ok(next);
          if (ok && more_blind_steps && full_entries[next] == 0) ok = false;
          if (ok) keep |= ActionMask{1} << y;
        }
        if (keep != entry) {
          entry = keep;
          changed = true;
        }
      }
    }
    st.transient[m] = full_entries;
  }

  // Growing phase, top down: at register length k the next consult is at
  // length k+1 (or the first observation when k+1 == m == delay).
  for (int k = m - 1; k >= 0; --k) {
    const std::size_t sz = ipow(act, k);
    const std::size_t append_mult = ipow(act, k);
    st.transient[k].assign(sz, 0);
    for (std::size_t code = 0; code < sz; ++code) {
      ActionMask entry = 0;
      for (int y = 0; y < act; ++y) {
        const std::size_t next =
            code + static_cast<std::size_t>(y) * append_mult;
        bool ok;
        if (k + 1 == m) {
          ok = (m == delay) ? observed_ok(next)
                            : st.transient[m][next] != 0;
        } else {
          ok = st.transient[k + 1][next] != 0;
        }
        if (ok) entry |= ActionMask{1} << y;
      }
      st.transient[k][code] = entry;
    }
  }
}

}  // namespace

std::vector<MaxPermStrategy> solve_delayed_layers(const GameGraph& game,
                                                  int delay, int memory) {
  if (delay < 0 || memory < 0 || memory > delay)
    throw InvalidConfig("need 0 <= memory <= delay");
  if (delay > 0) require_action_total(game);

  const int na = game.agent_count();
  const int act = game.action_count();

  std::vector<MaxPermStrategy> layers;
  layers.push_back(solve_perfect_info(game));

  // Observations reachable from an agent state by any action then one
  // environment move; used by the restricted-memory branch. The forgotten
  // own actions range over the whole alphabet: the strategy must be safe
  // whatever they were, including moves through unsafe territory.
  std::vector<std::vector<int>> any_action_obs(na);
  // Whether every action's immediate environment state is safe: with the
  // applied action forgotten, one unsafe traversal means the play may
  // already be lost.
  std::vector<std::uint8_t> every_traversal_safe(na, 1);
  if (delay > 0) {
    for (int s = 0; s < na; ++s) {
      std::vector<int>& obs = any_action_obs[s];
      for (int a = 0; a < act; ++a) {
        const int e = game.agent_successor(s, a);
        if (!game.env_safe(e)) every_traversal_safe[s] = 0;
        for (int nxt : game.env_successors(e))
          if (std::find(obs.begin(), obs.end(), nxt) == obs.end())
            obs.push_back(nxt);
      }
    }
  }

  for (int d = 1; d <= delay; ++d) {
    const int m = std::min(d, memory);
    const int m_prev = layers.back().memory;
    const std::vector<ActionMask>& prev = layers.back().steady;
    const std::size_t prev_regs = ipow(act, m_prev);
    const std::size_t regs = ipow(act, m);

    MaxPermStrategy st;
    st.delay = d;
    st.memory = m;
    st.action_count = act;
    st.agent_count = na;
    st.winning = layers.front().winning;
    st.steady.assign(static_cast<std::size_t>(na) * regs, 0);

    if (m == d) {
      // Full memory: the oldest register action is the one that was applied
      // at the observed state; drop it for the shorter register at d-1. An
      // unsafe observed state or an unsafe traversed environment state
      // means the play is already lost.
      for (int s = 0; s < na; ++s) {
        for (std::size_t code = 0; code < regs; ++code) {
          ActionMask inter = 0;
          const int oldest = static_cast<int>(code % act);
          const std::size_t tail = code / act;
          const int e = game.agent_successor(s, oldest);
          if (game.agent_safe(s) && game.env_safe(e)) {
            inter = full_mask(act);
            for (int nxt : game.env_successors(e)) {
              inter &= prev[static_cast<std::size_t>(nxt) * prev_regs + tail];
              if (inter == 0) break;
            }
          }
          st.steady[static_cast<std::size_t>(s) * regs + code] = inter;
        }
      }
    } else {
      // Restricted memory: the action applied at the observed state has
      // been forgotten, so intersect over observations for every action.
      for (int s = 0; s < na; ++s) {
        for (std::size_t code = 0; code < regs; ++code) {
          ActionMask inter = 0;
          if (game.agent_safe(s) && every_traversal_safe[s]) {
            inter = full_mask(act);
            for (int nxt : any_action_obs[s]) {
              inter &= prev[static_cast<std::size_t>(nxt) * prev_regs + code];
              if (inter == 0) break;
            }
          }
          st.steady[static_cast<std::size_t>(s) * regs + code] = inter;
        }
      }
    }

    shrink_layer(game, m, m == d, any_action_obs, st.steady);
    layers.push_back(std::move(st));
  }

  for (auto& layer : layers) compute_transient(game, layer);
  return layers;
}

MaxPermStrategy solve_delayed(const GameGraph& game, int delay, int memory) {
  std::vector<MaxPermStrategy> layers =
      solve_delayed_layers(game, delay, memory);
  return std::move(layers.back());
}

}  // namespace shieldlab::games
