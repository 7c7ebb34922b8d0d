#pragma once

#include <utility>
#include <vector>

#include "shieldlab/common.hpp"

namespace shieldlab::mdp {

// Sparse finite MDP. Transition rows are stored per (state, action); an
// action is enabled at a state iff its row is nonempty. Every enabled row
// must sum to 1 within 1e-9 with probabilities in (0, 1].
class Mdp {
 public:
  struct Entry {
    int succ;
    double prob;
  };

  Mdp(int state_count, int action_count);

  int state_count() const { return state_count_; }
  int action_count() const { return action_count_; }

  void add_transition(int state, int action, int succ, double prob);

  const std::vector<Entry>& row(int state, int action) const {
    return rows_[static_cast<std::size_t>(state) * action_count_ + action];
  }
  bool enabled(int state, int action) const {
    return !row(state, action).empty();
  }
  ActionMask enabled_actions(int state) const;

  // Checks row stochasticity and that every state has an enabled action.
  void validate() const;

 private:
  int state_count_;
  int action_count_;
  std::vector<std::vector<Entry>> rows_;
};

// Markov chain: one transition row per state.
class MarkovChain {
 public:
  explicit MarkovChain(int state_count);

  int state_count() const { return state_count_; }
  void add_transition(int state, int succ, double prob);
  const std::vector<Mdp::Entry>& row(int state) const { return rows_[state]; }
  void validate() const;

 private:
  int state_count_;
  std::vector<std::vector<Mdp::Entry>> rows_;
};

// Memoryless, possibly stochastic, decision rule. Support must be inside
// the enabled actions and each state's mass must sum to 1.
class Policy {
 public:
  explicit Policy(int state_count) : choice_(state_count) {}

  void set_choice(int state, std::vector<std::pair<int, double>> dist);
  void set_deterministic(int state, int action);
  const std::vector<std::pair<int, double>>& choice(int state) const {
    return choice_[state];
  }
  int state_count() const { return static_cast<int>(choice_.size()); }

  void validate(const Mdp& mdp) const;

 private:
  std::vector<std::vector<std::pair<int, double>>> choice_;
};

// Product constructions: states are paired (s1 * |S2| + s2). The MDP x MDP
// product pairs actions (a1 * |A2| + a2); the MDP x chain product keeps the
// MDP's action set.
Mdp product(const Mdp& m1, const Mdp& m2);
Mdp product(const Mdp& m, const MarkovChain& chain);

}  // namespace shieldlab::mdp
