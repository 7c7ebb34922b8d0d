#pragma once

#include <deque>
#include <map>

#include "test_util.hpp"

namespace testutil {

// Independent oracle for delayed solving with full memory: builds the
// undelayed game on S x Act^delta (plus the blind-phase states), computes
// its winning region by plain fixed-point iteration, and reads off the
// allowed-action sets.
class ReductionOracle {
 public:
  ReductionOracle(const shieldlab::games::GameGraph& game, int delta)
      : game_(game), delta_(delta) {
    regs_ = 1;
    for (int i = 0; i < delta; ++i) regs_ *= game.action_count();
    // win[s][pi]: observed s with pending actions pi keeps a winning
    // strategy. Iterated to the greatest fixed point.
    win_.assign(game.agent_count(), std::vector<bool>(regs_, true));
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < game.agent_count(); ++s) {
        for (std::size_t pi = 0; pi < regs_; ++pi) {
          if (!win_[s][pi]) continue;
          if (allowed_now(s, pi).empty()) {
            win_[s][pi] = false;
            changed = true;
          }
        }
      }
    }
  }

  // Allowed actions at (observed state, pending register), oldest first.
  std::vector<int> allowed(int s, const std::vector<int>& reg) const {
    std::size_t pi = 0;
    std::size_t mult = 1;
    for (int a : reg) {
      pi += static_cast<std::size_t>(a) * mult;
      mult *= game_.action_count();
    }
    if (!win_[s][pi]) return {};
    return allowed_now(s, pi);
  }

  // Allowed actions in the blind phase with `played` actions so far (oldest
  // first): every environment resolution of the initial move must leave a
  // winning full-register entry.
  std::vector<int> allowed_blind(const std::vector<int>& played) const {
    std::vector<int> out;
    for (int y = 0; y < game_.action_count(); ++y) {
      std::vector<int> next = played;
      next.push_back(y);
      if (blind_ok(next)) out.push_back(y);
    }
    return out;
  }

 private:
  bool blind_ok(const std::vector<int>& played) const {
    if (static_cast<int>(played.size()) == delta_) {
      for (int s : game_.env_successors(game_.initial())) {
        std::size_t pi = 0;
        std::size_t mult = 1;
        for (int a : played) {
          pi += static_cast<std::size_t>(a) * mult;
          mult *= game_.action_count();
        }
        if (!win_[s][pi] || allowed_now(s, pi).empty()) return false;
      }
      return true;
    }
    for (int y = 0; y < game_.action_count(); ++y) {
      std::vector<int> next = played;
      next.push_back(y);
      if (blind_ok(next)) return true;
    }
    return false;
  }

  // One macro step: consume the oldest pending action at the observed
  // state; the traversed environment state and the observed state itself
  // must be safe, and every environment resolution must stay winning.
  std::vector<int> allowed_now(int s, std::size_t pi) const {
    std::vector<int> out;
    if (!game_.agent_safe(s)) return out;
    const int act = game_.action_count();
    if (delta_ == 0) {
      for (int y = 0; y < act; ++y) {
        const int e = game_.agent_successor(s, y);
        if (e == -1 || !game_.env_safe(e)) continue;
        bool ok = true;
        for (int nxt : game_.env_successors(e))
          if (!game_.agent_safe(nxt) || !win_[nxt][0]) {
            ok = false;
            break;
          }
        if (ok) out.push_back(y);
      }
      return out;
    }
    const int oldest = static_cast<int>(pi % act);
    const std::size_t tail = pi / act;
    const std::size_t newest_mult = regs_ / act;
    const int e = game_.agent_successor(s, oldest);
    if (e == -1 || !game_.env_safe(e)) return out;
    for (int y = 0; y < act; ++y) {
      const std::size_t next = tail + static_cast<std::size_t>(y) * newest_mult;
      bool ok = true;
      for (int nxt : game_.env_successors(e)) {
        if (!win_[nxt][next]) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(y);
    }
    return out;
  }

  const shieldlab::games::GameGraph& game_;
  int delta_;
  std::size_t regs_;
  std::vector<std::vector<bool>> win_;
};

}  // namespace testutil
