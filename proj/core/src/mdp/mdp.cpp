#include "shieldlab/mdp/mdp.hpp"

#include <cmath>

namespace shieldlab::mdp {

namespace {
constexpr double kRowTolerance = 1e-9;
}

Mdp::Mdp(int state_count, int action_count)
    : state_count_(state_count),
      action_count_(action_count),
      rows_(static_cast<std::size_t>(state_count) * action_count) {
  if (state_count < 1) throw InvalidInput("MDP needs at least one state");
  if (action_count < 1 || action_count > kMaxActions)
    throw InvalidInput("MDP action alphabet must have size in [1, 64]");
}

void Mdp::add_transition(int state, int action, int succ, double prob) {
  if (state < 0 || state >= state_count_ || action < 0 ||
      action >= action_count_ || succ < 0 || succ >= state_count_)
    throw InvalidInput("transition out of range");
  if (!(prob > 0.0) || prob > 1.0 + kRowTolerance)
    throw InvalidInput("transition probability must be in (0, 1]");
  auto& r = rows_[static_cast<std::size_t>(state) * action_count_ + action];
  for (auto& e : r) {
    if (e.succ == succ) {
      e.prob += prob;
      return;
    }
  }
  r.push_back({succ, prob});
}

ActionMask Mdp::enabled_actions(int state) const {
  ActionMask m = 0;
  for (int a = 0; a < action_count_; ++a)
    if (enabled(state, a)) m |= ActionMask{1} << a;
  return m;
}

void Mdp::validate() const {
  for (int s = 0; s < state_count_; ++s) {
    bool any = false;
    for (int a = 0; a < action_count_; ++a) {
      const auto& r = row(s, a);
      if (r.empty()) continue;
      any = true;
      double sum = 0;
      for (const auto& e : r) sum += e.prob;
      if (std::abs(sum - 1.0) > kRowTolerance)
        throw InvalidInput("row (" + std::to_string(s) + "," +
                           std::to_string(a) + ") sums to " +
                           std::to_string(sum));
    }
    if (!any)
      throw InvalidInput("state " + std::to_string(s) +
                         " has no enabled action");
  }
}

MarkovChain::MarkovChain(int state_count)
    : state_count_(state_count), rows_(state_count) {
  if (state_count < 1) throw InvalidInput("chain needs at least one state");
}

void MarkovChain::add_transition(int state, int succ, double prob) {
  if (state < 0 || state >= state_count_ || succ < 0 || succ >= state_count_)
    throw InvalidInput("transition out of range");
  if (!(prob > 0.0) || prob > 1.0 + kRowTolerance)
    throw InvalidInput("transition probability must be in (0, 1]");
  for (auto& e : rows_[state]) {
    if (e.succ == succ) {
      e.prob += prob;
      return;
    }
  }
  rows_[state].push_back({succ, prob});
}

void MarkovChain::validate() const {
  for (int s = 0; s < state_count_; ++s) {
    double sum = 0;
    for (const auto& e : rows_[s]) sum += e.prob;
    if (std::abs(sum - 1.0) > kRowTolerance)
      throw InvalidInput("chain row " + std::to_string(s) + " sums to " +
                         std::to_string(sum));
  }
}

void Policy::set_choice(int state, std::vector<std::pair<int, double>> dist) {
  choice_[state] = std::move(dist);
}

void Policy::set_deterministic(int state, int action) {
  choice_[state] = {{action, 1.0}};
}

void Policy::validate(const Mdp& mdp) const {
  if (state_count() != mdp.state_count())
    throw InvalidPolicy("policy has wrong state count");
  for (int s = 0; s < state_count(); ++s) {
    double sum = 0;
    for (const auto& [a, p] : choice_[s]) {
      if (!mdp.enabled(s, a))
        throw InvalidPolicy("policy uses disabled action " +
                            std::to_string(a) + " at state " +
                            std::to_string(s));
      if (p < 0) throw InvalidPolicy("negative policy probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance)
      throw InvalidPolicy("policy mass at state " + std::to_string(s) +
                          " sums to " + std::to_string(sum));
  }
}

Mdp product(const Mdp& m1, const Mdp& m2) {
  Mdp out(m1.state_count() * m2.state_count(),
          m1.action_count() * m2.action_count());
  for (int s1 = 0; s1 < m1.state_count(); ++s1) {
    for (int s2 = 0; s2 < m2.state_count(); ++s2) {
      for (int a1 = 0; a1 < m1.action_count(); ++a1) {
        const auto& r1 = m1.row(s1, a1);
        if (r1.empty()) continue;
        for (int a2 = 0; a2 < m2.action_count(); ++a2) {
          const auto& r2 = m2.row(s2, a2);
          if (r2.empty()) continue;
          const int s = s1 * m2.state_count() + s2;
          const int a = a1 * m2.action_count() + a2;
          for (const auto& e1 : r1)
            for (const auto& e2 : r2)
              out.add_transition(s, a, e1.succ * m2.state_count() + e2.succ,
                                 e1.prob * e2.prob);
        }
      }
    }
  }
  return out;
}

Mdp product(const Mdp& m, const MarkovChain& chain) {
  Mdp out(m.state_count() * chain.state_count(), m.action_count());
  for (int s1 = 0; s1 < m.state_count(); ++s1) {
    for (int s2 = 0; s2 < chain.state_count(); ++s2) {
      const int s = s1 * chain.state_count() + s2;
      for (int a = 0; a < m.action_count(); ++a) {
        const auto& r1 = m.row(s1, a);
        if (r1.empty()) continue;
        for (const auto& e1 : r1)
          for (const auto& e2 : chain.row(s2))
            out.add_transition(s, a, e1.succ * chain.state_count() + e2.succ,
                               e1.prob * e2.prob);
      }
    }
  }
  return out;
}

}  // namespace shieldlab::mdp
