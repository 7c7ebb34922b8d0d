#include <doctest.h>

#include <deque>
#include <set>
#include <sstream>

#include "reduction_oracle.hpp"
#include "shieldlab/games/fitness.hpp"
#include "shieldlab/games/io.hpp"
#include "shieldlab/games/shields.hpp"
#include "shieldlab/models/gridworld.hpp"

using namespace shieldlab;
using namespace testutil;

namespace {

// Memory-separating game: from the hub the last own action reveals which
// side the play is on; without memory the allowed sets of the two sides
// intersect to nothing.
games::GameGraph memory_separating_game() {
  // Agent states: 0 hub, 1..2 after a, 3..4 after b. Env states: 0 after-a,
  // 1 after-b, 2 safe return, 3 dead. Actions a=0, b=1.
  games::GameGraph g(4, 5, 2);
  g.add_agent_edge(0, 0, 0);
  g.add_agent_edge(0, 1, 1);
  g.add_env_edge(0, 1);
  g.add_env_edge(0, 2);
  g.add_env_edge(1, 3);
  g.add_env_edge(1, 4);
  // After-a states: a returns safely, b dies. After-b: mirrored.
  for (int s : {1, 2}) {
    g.add_agent_edge(s, 0, 2);
    g.add_agent_edge(s, 1, 3);
  }
  for (int s : {3, 4}) {
    g.add_agent_edge(s, 0, 3);
    g.add_agent_edge(s, 1, 2);
  }
  g.add_env_edge(2, 0);
  g.add_env_edge(3, 0);
  g.set_env_unsafe(3);
  g.set_initial(2);
  g.validate();
  return g;
}

// Chain game with a deterministic environment: exiting the safe loop costs
// k agent steps, and full memory keeps every safe state controllable at
// any delay.
games::GameGraph chain_game(int k) {
  // Agent states 0..k: 0 is the start, k is unsafe. Action 0 advances the
  // chain, action 1 stays. Env states mirror agent states, single choice.
  games::GameGraph g(k + 1, k + 1, 2);
  for (int i = 0; i <= k; ++i) {
    const int next = std::min(i + 1, k);
    g.add_agent_edge(i, 0, next);
    g.add_agent_edge(i, 1, i == k ? k : i);
    g.add_env_edge(i, i);
  }
  g.set_agent_unsafe(k);
  g.set_env_unsafe(k);
  g.set_initial(0);
  g.validate();
  return g;
}

}  // namespace

TEST_CASE("perfect-information solve matches the naive fixed point") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const games::GameGraph g = random_game(rng, 6, 3);
    const games::MaxPermStrategy st = games::solve_perfect_info(g);
    const NaiveRegion w = naive_winning_region(g);
    for (int e = 0; e < g.env_count(); ++e)
      CHECK(static_cast<bool>(st.winning[e]) == w.env[e]);
    for (int s = 0; s < g.agent_count(); ++s) {
      CHECK(static_cast<bool>(st.winning[g.env_count() + s]) == w.agent[s]);
      CHECK((st.steady[s] != 0) == w.agent[s]);
      for (int a = 0; a < g.action_count(); ++a) {
        const bool allowed = mask_has(st.steady[s], a);
        const int e = g.agent_successor(s, a);
        const bool should = w.agent[s] && e != -1 && w.env[e];
        CHECK(allowed == should);
      }
    }
  }
}

TEST_CASE("fully safe connected game keeps every action allowed") {
  games::GameGraph g(2, 2, 2);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a) g.add_agent_edge(s, a, (s + a) % 2);
  for (int e = 0; e < 2; ++e) {
    g.add_env_edge(e, 0);
    g.add_env_edge(e, 1);
  }
  g.set_initial(0);
  const games::MaxPermStrategy st = games::solve_perfect_info(g);
  CHECK(st.steady[0] == full_mask(2));
  CHECK(st.steady[1] == full_mask(2));
}

TEST_CASE("delayed solve equals the explicit reduction oracle") {
  std::mt19937_64 rng(11);
  int compared = 0;
  for (int round = 0; round < 60; ++round) {
    const games::GameGraph g = random_game(rng, 8, 3);
    for (int delta = 0; delta <= 2; ++delta) {
      const games::MaxPermStrategy st = games::solve_delayed(g, delta, delta);
      const ReductionOracle oracle(g, delta);
      std::size_t regs = 1;
      for (int i = 0; i < delta; ++i) regs *= g.action_count();

      for (int s = 0; s < g.agent_count(); ++s) {
        for (std::size_t code = 0; code < regs; ++code) {
          games::Register reg;
          std::size_t rest = code;
          for (int i = 0; i < delta; ++i) {
            reg.push_back(static_cast<int>(rest % g.action_count()));
            rest /= g.action_count();
          }
          const ActionMask mine = st.steady_at(s, reg);
          ActionMask expect = 0;
          for (int y : oracle.allowed(s, reg)) expect |= ActionMask{1} << y;
          CHECK(mine == expect);
          ++compared;
        }
      }

      // Blind-phase entries.
      if (delta > 0) {
        std::vector<std::vector<int>> frontier{{}};
        for (int len = 0; len < delta; ++len) {
          std::vector<std::vector<int>> next;
          for (const auto& played : frontier) {
            ActionMask expect = 0;
            for (int y : oracle.allowed_blind(played))
              expect |= ActionMask{1} << y;
            CHECK(st.transient_at(played) == expect);
            for (int y = 0; y < g.action_count(); ++y) {
              auto grown = played;
              grown.push_back(y);
              next.push_back(std::move(grown));
            }
          }
          frontier = std::move(next);
        }
      }
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("memory separates: winning with mu=1, losing with mu=0") {
  const games::GameGraph g = memory_separating_game();
  const games::MaxPermStrategy with_memory = games::solve_delayed(g, 1, 1);
  // Oldest-first register [last action]. After a only a stays safe; after
  // b only b.
  CHECK(with_memory.steady_at(0, {0}) == (ActionMask{1} << 0));
  CHECK(with_memory.steady_at(0, {1}) == (ActionMask{1} << 1));

  const games::MaxPermStrategy memoryless = games::solve_delayed(g, 1, 0);
  CHECK(memoryless.steady_at(0, {}) == 0);
}

TEST_CASE("delay monotonicity and theorem on robustness vs controllability") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 500; ++round) {
    const games::GameGraph g = random_game(rng, 6, 2);
    std::uniform_int_distribution<int> ddist(0, 3);
    const int delta = ddist(rng);
    std::uniform_int_distribution<int> mdist(0, delta);
    const int mu = mdist(rng);

    const games::FitnessTable robustness = games::robustness_values(g);
    const std::vector<games::MaxPermStrategy> layers =
        games::solve_delayed_layers(g, delta, mu);

    // Controllable at delay d implies controllable at d-1 (mu = delta
    // case), and robustness >= delta - mu + 1 on controllable states.
    const games::MaxPermStrategy& top = layers.back();
    const std::size_t regs = top.steady.size() / g.agent_count();
    for (int s = 0; s < g.agent_count(); ++s) {
      bool controllable = false;
      for (std::size_t code = 0; code < regs; ++code)
        if (top.steady[s * regs + code] != 0) controllable = true;
      if (controllable) {
        const int bound = delta - mu + 1;
        CHECK((robustness.values[s] == kUnbounded ||
               robustness.values[s] >= bound));
        // Delay monotonicity holds layer by layer with full memory.
        if (mu == delta) {
          for (const games::MaxPermStrategy& layer : layers) {
            const std::size_t lr = layer.steady.size() / g.agent_count();
            bool some = false;
            for (std::size_t code = 0; code < lr; ++code)
              if (layer.steady[s * lr + code] != 0) some = true;
            CHECK(some);
          }
        }
      }
    }
  }
}

TEST_CASE("shielded plays never leave the safe region (exhaustive)") {
  std::mt19937_64 rng(31);
  int explored = 0;
  for (int round = 0; round < 40; ++round) {
    const games::GameGraph g = random_game(rng, 5, 2);
    for (const auto [delta, mu] :
         {std::pair{0, 0}, std::pair{1, 1}, std::pair{1, 0}, std::pair{2, 1},
          std::pair{2, 2}}) {
      const games::MaxPermStrategy st = games::solve_delayed(g, delta, mu);
      if (st.all_empty()) continue;
      // The play must be viable from the initial state: a nonempty blind
      // entry (delayed) or nonempty tables at every first observation.
      games::Register blank;
      if (delta > 0) {
        if (st.transient_at(blank) == 0) continue;
      } else {
        bool viable = true;
        for (int s0 : g.env_successors(g.initial()))
          if (st.steady[s0] == 0) viable = false;
        if (!viable) continue;
      }

      // Exhaustive search over (window of recent agent states, register).
      // The window holds the last delta+1 real agent states (newest last);
      // before the first observation the window is shorter.
      struct Node {
        std::vector<int> window;
        games::Register reg;
        bool operator<(const Node& o) const {
          return std::tie(window, reg) < std::tie(o.window, o.reg);
        }
      };
      std::set<Node> seen;
      std::deque<Node> queue;
      for (int s0 : g.env_successors(g.initial())) {
        CHECK(g.agent_safe(s0));
        queue.push_back({{s0}, {}});
      }
      while (!queue.empty()) {
        Node node = queue.front();
        queue.pop_front();
        if (!seen.insert(node).second) continue;
        ++explored;
        const int current = node.window.back();

        ActionMask allowed;
        if (static_cast<int>(node.window.size()) > delta) {
          allowed = st.steady_at(node.window.front(), node.reg);
        } else {
          allowed = st.transient_at(node.reg);
        }
        CHECK(allowed != 0);  // Shrink closure: no dead entries reachable
        for (int y : mask_to_actions(allowed)) {
          const int e = g.agent_successor(current, y);
          CHECK(g.env_safe(e));
          for (int nxt : g.env_successors(e)) {
            CHECK(g.agent_safe(nxt));
            Node succ = node;
            succ.window.push_back(nxt);
            if (static_cast<int>(succ.window.size()) > delta + 1)
              succ.window.erase(succ.window.begin());
            if (mu > 0) {
              succ.reg.push_back(y);
              if (static_cast<int>(succ.reg.size()) > mu)
                succ.reg.erase(succ.reg.begin());
            }
            queue.push_back(std::move(succ));
          }
        }
      }
    }
  }
  CHECK(explored > 500);
}

TEST_CASE("forward multiset counts distinct witnessing paths") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 50; ++round) {
    const games::GameGraph g = random_game(rng, 4, 2);
    std::uniform_int_distribution<int> spick(0, g.agent_count() - 1);
    const int s = spick(rng);
    for (int k = 0; k <= 3; ++k) {
      // Free-action multiset (empty register): DFS path enumeration.
      std::map<int, long long> expect;
      struct Frame {
        int state;
        int depth;
      };
      std::deque<Frame> stack{{s, 0}};
      while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.depth == k) {
          ++expect[f.state];
          continue;
        }
        for (int a = 0; a < g.action_count(); ++a) {
          const int e = g.agent_successor(f.state, a);
          if (e == -1) continue;
          for (int nxt : g.env_successors(e))
            stack.push_back({nxt, f.depth + 1});
        }
      }
      const games::ForwardMultiset got = games::forward_multiset(g, s, {}, k);
      CHECK(got.counts == expect);
    }
  }
}

TEST_CASE("forward multiset base case and register constraint") {
  const games::GameGraph g = chain_game(3);
  const games::ForwardMultiset base = games::forward_multiset(g, 0, {}, 0);
  CHECK(base.total == 1);
  CHECK(base.counts.at(0) == 1);

  // Fixed register forces the actions: advancing twice lands two cells in.
  const games::ForwardMultiset fixed =
      games::forward_multiset(g, 0, {0, 0}, 2);
  CHECK(fixed.total == 1);
  CHECK(fixed.counts.at(2) == 1);
}

TEST_CASE("robustness: BFS oracle, unsafe states, and the chain family") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 100; ++round) {
    const games::GameGraph g = random_game(rng, 6, 2);
    const games::FitnessTable table = games::robustness_values(g);
    const NaiveRegion w = naive_winning_region(g);
    for (int s = 0; s < g.agent_count(); ++s) {
      if (!w.agent[s]) {
        CHECK(table.values[s] == 0);
        continue;
      }
      CHECK(table.values[s] >= 1);
      // Brute-force shortest exit by forward enumeration.
      int best = kUnbounded;
      std::vector<std::vector<bool>> reachable(
          1, std::vector<bool>(g.agent_count(), false));
      reachable[0][s] = true;
      for (int k = 1; k <= g.agent_count() + 1 && best == kUnbounded; ++k) {
        reachable.emplace_back(g.agent_count(), false);
        for (int u = 0; u < g.agent_count(); ++u) {
          if (!reachable[k - 1][u]) continue;
          for (int a = 0; a < g.action_count(); ++a) {
            const int e = g.agent_successor(u, a);
            if (e == -1) continue;
            for (int nxt : g.env_successors(e)) {
              reachable[k][nxt] = true;
              if (!w.agent[nxt] && k < best) best = k;
            }
          }
        }
      }
      CHECK(table.values[s] == best);
    }
  }

  for (int k : {1, 2, 5, 9}) {
    const games::GameGraph g = chain_game(k);
    const games::FitnessTable table = games::robustness_values(g);
    CHECK(table.values[0] == k);
    // Deterministic environment: every safe state stays controllable at
    // any delay with full memory.
    const games::FitnessTable phi = games::controllability_values(g, 4, 4);
    for (int s = 0; s < k; ++s) CHECK(phi.values[s] == 4);
    CHECK(phi.values[k] == -1);
  }
}

TEST_CASE("controllability outside the region and at the cutoff") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 50; ++round) {
    const games::GameGraph g = random_game(rng, 5, 2);
    const games::FitnessTable phi = games::controllability_values(g, 2, 2);
    const NaiveRegion w = naive_winning_region(g);
    for (int s = 0; s < g.agent_count(); ++s) {
      if (!w.agent[s])
        CHECK(phi.values[s] == -1);
      else
        CHECK(phi.values[s] >= 0);
      CHECK(phi.values[s] <= 2);
    }
  }

  // Fully safe game saturates at the cutoff.
  games::GameGraph g(2, 2, 2);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a) g.add_agent_edge(s, a, (s + a) % 2);
  for (int e = 0; e < 2; ++e) {
    g.add_env_edge(e, 0);
    g.add_env_edge(e, 1);
  }
  g.set_initial(0);
  const games::FitnessTable phi = games::controllability_values(g, 3, 3);
  CHECK(phi.values[0] == 3);
  CHECK(phi.values[1] == 3);
}

TEST_CASE("determinization maximizes expected fitness with low-id ties") {
  const games::GameGraph g = chain_game(4);
  const games::MaxPermStrategy st = games::solve_perfect_info(g);
  const games::FitnessTable rob = games::robustness_values(g);
  const games::Determinization det =
      games::determinize_max_fitness(st, rob, g);
  // Staying keeps the distance, advancing shrinks it: stay (action 1) has
  // the higher expected robustness everywhere inside the region.
  CHECK(det.at(0, {}) == 1);
  CHECK(det.at(2, {}) == 1);

  // Singleton allowed sets are returned regardless of fitness.
  games::MaxPermStrategy forced = st;
  forced.steady[0] = ActionMask{1} << 0;
  const games::Determinization pick =
      games::determinize_max_fitness(forced, rob, g);
  CHECK(pick.at(0, {}) == 0);
}

TEST_CASE("extracted shields pass allowed proposals and correct the rest") {
  const games::GameGraph g = memory_separating_game();
  const games::MaxPermStrategy st = games::solve_delayed(g, 1, 1);
  const games::FitnessTable rob = games::robustness_values(g);
  const games::Determinization det = games::determinize_max_fitness(st, rob, g);
  const games::ExtractedShields shields = games::extract_shields(st, det);

  CHECK(shields.post.correct(0, {0}, 0) == 0);  // allowed: pass through
  CHECK(shields.post.correct(0, {0}, 1) == 0);  // corrected to the choice
  CHECK(shields.pre.allowed(0, {1}) == (ActionMask{1} << 1));
  CHECK_THROWS_AS(shields.pre.allowed(1, {1}), InfeasibleState);
}

TEST_CASE("pre-shield at delay 0 equals the perfect-information table") {
  std::mt19937_64 rng(61);
  const games::GameGraph g = random_game(rng, 6, 3);
  const games::MaxPermStrategy direct = games::solve_perfect_info(g);
  const games::MaxPermStrategy layered = games::solve_delayed(g, 0, 0);
  CHECK(direct.steady == layered.steady);
}

TEST_CASE("game file round-trip") {
  std::mt19937_64 rng(67);
  const games::GameGraph g = random_game(rng, 6, 3);
  std::stringstream buffer;
  games::write_game(buffer, g);
  const games::GameGraph back = games::read_game(buffer);
  CHECK(back.env_count() == g.env_count());
  CHECK(back.agent_count() == g.agent_count());
  CHECK(back.action_count() == g.action_count());
  CHECK(back.initial() == g.initial());
  for (int e = 0; e < g.env_count(); ++e) {
    CHECK(back.env_successors(e) == g.env_successors(e));
    CHECK(back.env_safe(e) == g.env_safe(e));
  }
  for (int s = 0; s < g.agent_count(); ++s) {
    CHECK(back.agent_safe(s) == g.agent_safe(s));
    for (int a = 0; a < g.action_count(); ++a)
      CHECK(back.agent_successor(s, a) == g.agent_successor(s, a));
  }
}

TEST_CASE("strategy export includes steady and transient entries") {
  const games::GameGraph g = memory_separating_game();
  const games::MaxPermStrategy st = games::solve_delayed(g, 1, 1);
  std::stringstream buffer;
  games::write_strategy_csv(buffer, st);
  const std::string text = buffer.str();
  CHECK(text.find("state,register,allowed-actions") != std::string::npos);
  CHECK(text.find("eps,") != std::string::npos);
}
