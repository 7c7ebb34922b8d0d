#include "shieldlab/games/fitness.hpp"

#include <algorithm>
#include <deque>

namespace shieldlab::games {

namespace {
constexpr double kSaturatedFitness = 1e9;
}

ForwardMultiset forward_multiset(const GameGraph& game, int agent_state,
                                 const Register& reg, int k) {
  if (agent_state < 0 || agent_state >= game.agent_count())
    throw InvalidInput("agent state out of range");
  if (static_cast<int>(reg.size()) > k)
    throw InvalidInput("register longer than the path");
  const int free_steps = k - static_cast<int>(reg.size());

  std::map<int, long long> cur;
  cur[agent_state] = 1;
  for (int step = 0; step < k; ++step) {
    std::map<int, long long> next;
    for (const auto& [s, count] : cur) {
      const bool fixed = step >= free_steps;
      const int lo = fixed ? reg[step - free_steps] : 0;
      const int hi = fixed ? reg[step - free_steps] + 1 : game.action_count();
      for (int a = lo; a < hi; ++a) {
        const int e = game.agent_successor(s, a);
        if (e == -1) continue;
        for (int nxt : game.env_successors(e)) next[nxt] += count;
      }
    }
    cur = std::move(next);
  }

  ForwardMultiset out;
  out.counts = std::move(cur);
  for (const auto& [s, c] : out.counts) out.total += c;
  return out;
}

FitnessTable robustness_values(const GameGraph& game) {
  const MaxPermStrategy base = solve_perfect_info(game);
  const int ne = game.env_count();
  const int na = game.agent_count();
  const int act = game.action_count();

  // One agent step: s -> s'' when s -a-> e -u-> s'' for some a. BFS from
  // the complement of the winning region over the reversed step graph.
  std::vector<std::vector<int>> rev(na);
  for (int s = 0; s < na; ++s) {
    for (int a = 0; a < act; ++a) {
      const int e = game.agent_successor(s, a);
      if (e == -1) continue;
      for (int nxt : game.env_successors(e)) rev[nxt].push_back(s);
    }
  }

  FitnessTable table{FitnessKind::kRobustness,
                     std::vector<int>(na, kUnbounded)};
  std::deque<int> queue;
  for (int s = 0; s < na; ++s) {
    if (!base.winning[ne + s]) {
      table.values[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (int pred : rev[s]) {
      if (table.values[pred] != kUnbounded) continue;
      table.values[pred] = table.values[s] + 1;
      queue.push_back(pred);
    }
  }
  return table;
}

FitnessTable controllability_values(const GameGraph& game, int memory,
                                    int delta_max) {
  if (delta_max < 0) throw InvalidConfig("delta_max must be >= 0");
  const std::vector<MaxPermStrategy> layers =
      solve_delayed_layers(game, delta_max, std::min(memory, delta_max));
  const int na = game.agent_count();

  FitnessTable table{FitnessKind::kControllability, std::vector<int>(na, -1)};
  for (const MaxPermStrategy& layer : layers) {
    const std::size_t regs = layer.steady.size() / na;
    for (int s = 0; s < na; ++s) {
      if (table.values[s] >= layer.delay) continue;
      const std::size_t base = static_cast<std::size_t>(s) * regs;
      for (std::size_t code = 0; code < regs; ++code) {
        if (layer.steady[base + code] != 0) {
          table.values[s] = layer.delay;
          break;
        }
      }
    }
  }
  return table;
}

double expected_fitness(const GameGraph& game, const FitnessTable& fitness,
                        int agent_state, const Register& reg, int k) {
  const ForwardMultiset fwd = forward_multiset(game, agent_state, reg, k);
  if (fwd.total == 0) return -kSaturatedFitness;
  double sum = 0;
  for (const auto& [s, count] : fwd.counts) {
    const int v = fitness.values[s];
    sum += (v == kUnbounded ? kSaturatedFitness : static_cast<double>(v)) *
           static_cast<double>(count);
  }
  return sum / static_cast<double>(fwd.total);
}

int Determinization::at(int agent_state, const Register& reg) const {
  std::size_t regs = 1;
  for (int i = 0; i < memory; ++i) regs *= action_count;
  if (static_cast<int>(reg.size()) != memory)
    throw InvalidInput("determinization query requires a full register");
  return choice[static_cast<std::size_t>(agent_state) * regs +
                register_code(reg, action_count)];
}

Determinization determinize_max_fitness(const MaxPermStrategy& strategy,
                                        const FitnessTable& fitness,
                                        const GameGraph& game) {
  const int na = strategy.agent_count;
  const int act = strategy.action_count;
  const int m = strategy.memory;
  const std::size_t regs = strategy.steady.size() / na;

  Determinization det;
  det.memory = m;
  det.action_count = act;
  det.choice.assign(strategy.steady.size(), -1);

  Register reg(m);
  for (int s = 0; s < na; ++s) {
    for (std::size_t code = 0; code < regs; ++code) {
      const ActionMask allowed =
          strategy.steady[static_cast<std::size_t>(s) * regs + code];
      if (allowed == 0) continue;
      std::size_t rest = code;
      for (int i = 0; i < m; ++i) {
        reg[i] = static_cast<int>(rest % act);
        rest /= act;
      }
      int best = -1;
      double best_value = 0;
      Register extended = reg;
      extended.push_back(0);
      for (int y : mask_to_actions(allowed)) {
        extended.back() = y;
        const double value = expected_fitness(game, fitness, s, extended,
                                              strategy.delay + 1);
        if (best == -1 || value > best_value) {
          best = y;
          best_value = value;
        }
      }
      det.choice[static_cast<std::size_t>(s) * regs + code] = best;
    }
  }
  return det;
}

}  // namespace shieldlab::games
