#include "shieldlab/mdp/reach.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace shieldlab::mdp {

namespace {

struct QueryContext {
  const Mdp& mdp;
  const ReachQuery& query;
  std::vector<std::uint8_t> in_target;
  std::vector<ActionMask> actions;  // per-state usable actions (min/max)

  QueryContext(const Mdp& m, const ReachQuery& q) : mdp(m), query(q) {
    in_target.assign(m.state_count(), 0);
    for (int t : q.target) {
      if (t < 0 || t >= m.state_count())
        throw InvalidInput("target state out of range");
      in_target[t] = 1;
    }
    if (q.mode == OptMode::kPolicy) {
      if (q.policy == nullptr)
        throw InvalidConfig("policy mode requires a policy");
      q.policy->validate(m);
    } else {
      actions.resize(m.state_count());
      for (int s = 0; s < m.state_count(); ++s) {
        ActionMask mask = m.enabled_actions(s);
        if (q.restriction != nullptr) mask &= (*q.restriction)[s];
        if (mask == 0)
          throw InvalidInput("restriction leaves state " + std::to_string(s) +
                             " without actions");
        actions[s] = mask;
      }
    }
  }
};

std::vector<double> bounded_reach(const QueryContext& ctx) {
  const Mdp& m = ctx.mdp;
  const int n = m.state_count();
  std::vector<double> v(n, 0.0), next(n, 0.0);
  for (int s = 0; s < n; ++s) v[s] = ctx.in_target[s] ? 1.0 : 0.0;
  for (int step = 0; step < ctx.query.horizon; ++step) {
    for (int s = 0; s < n; ++s) {
      if (ctx.in_target[s]) {
        next[s] = 1.0;
        continue;
      }
      if (ctx.query.mode == OptMode::kPolicy) {
        double acc = 0;
        for (const auto& [a, pa] : ctx.query.policy->choice(s)) {
          double row_value = 0;
          for (const auto& e : m.row(s, a)) row_value += e.prob * v[e.succ];
          acc += pa * row_value;
        }
        next[s] = acc;
      } else {
        const bool maximize = ctx.query.mode == OptMode::kMax;
        double best = maximize ? 0.0 : 2.0;
        for (int a : mask_to_actions(ctx.actions[s])) {
          double row_value = 0;
          for (const auto& e : m.row(s, a)) row_value += e.prob * v[e.succ];
          best = maximize ? std::max(best, row_value)
                          : std::min(best, row_value);
        }
        next[s] = best;
      }
    }
    v.swap(next);
  }
  return v;
}

// Backward existential reachability of `base` over the usable transitions,
// optionally forbidding paths through target states.
std::vector<std::uint8_t> backward_reach(const QueryContext& ctx,
                                         const std::vector<std::uint8_t>& base,
                                         bool avoid_target) {
  const Mdp& m = ctx.mdp;
  const int n = m.state_count();
  std::vector<std::uint8_t> reach = base;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (reach[s] || (avoid_target && ctx.in_target[s])) continue;
      bool hit = false;
      if (ctx.query.mode == OptMode::kPolicy) {
        for (const auto& [a, pa] : ctx.query.policy->choice(s)) {
          if (pa <= 0) continue;
          for (const auto& e : m.row(s, a))
            if (reach[e.succ]) {
              hit = true;
              break;
            }
          if (hit) break;
        }
      } else {
        for (int a : mask_to_actions(ctx.actions[s])) {
          for (const auto& e : m.row(s, a))
            if (reach[e.succ]) {
              hit = true;
              break;
            }
          if (hit) break;
        }
      }
      if (hit) {
        reach[s] = 1;
        changed = true;
      }
    }
  }
  return reach;
}

// States where the optimizer can surely avoid the target forever: the
// largest target-free set closed under some action (min/policy variants).
std::vector<std::uint8_t> sure_avoid_region(const QueryContext& ctx) {
  const Mdp& m = ctx.mdp;
  const int n = m.state_count();
  std::vector<std::uint8_t> in(n, 1);
  for (int s = 0; s < n; ++s)
    if (ctx.in_target[s]) in[s] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (!in[s]) continue;
      bool has_closed_action = false;
      if (ctx.query.mode == OptMode::kPolicy) {
        // A chain has no choice: closed iff every successor stays inside.
        bool closed = true;
        for (const auto& [a, pa] : ctx.query.policy->choice(s)) {
          if (pa <= 0) continue;
          for (const auto& e : m.row(s, a))
            if (!in[e.succ]) {
              closed = false;
              break;
            }
          if (!closed) break;
        }
        has_closed_action = closed;
      } else {
        for (int a : mask_to_actions(ctx.actions[s])) {
          bool closed = true;
          for (const auto& e : m.row(s, a))
            if (!in[e.succ]) {
              closed = false;
              break;
            }
          if (closed) {
            has_closed_action = true;
            break;
          }
        }
      }
      if (!has_closed_action) {
        in[s] = 0;
        changed = true;
      }
    }
  }
  return in;
}

// Prob1 set for maximal reachability (the classic two-nested fixed point).
std::vector<std::uint8_t> prob1_max(const QueryContext& ctx) {
  const Mdp& m = ctx.mdp;
  const int n = m.state_count();
  std::vector<std::uint8_t> u(n, 1);
  bool outer_changed = true;
  while (outer_changed) {
    // v := least fixed point of: target, or some action staying inside u
    // with a successor already in v.
    std::vector<std::uint8_t> v(n, 0);
    for (int s = 0; s < n; ++s) v[s] = ctx.in_target[s];
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n; ++s) {
        if (v[s]) continue;
        bool ok = false;
        for (int a : mask_to_actions(ctx.actions[s])) {
          bool stays = true;
          bool progresses = false;
          for (const auto& e : m.row(s, a)) {
            if (!u[e.succ]) stays = false;
            if (v[e.succ]) progresses = true;
          }
          if (stays && progresses) {
            ok = true;
            break;
          }
        }
        if (ok) {
          v[s] = 1;
          changed = true;
        }
      }
    }
    outer_changed = false;
    for (int s = 0; s < n; ++s) {
      if (u[s] && !v[s]) outer_changed = true;
    }
    u = std::move(v);
  }
  return u;
}

std::vector<double> unbounded_reach(const QueryContext& ctx) {
  const Mdp& m = ctx.mdp;
  const int n = m.state_count();
  if (!(ctx.query.tolerance > 0.0))
    throw InvalidConfig("unbounded reachability needs a positive tolerance");

  std::vector<std::uint8_t> prob0(n, 0), prob1(n, 0);
  switch (ctx.query.mode) {
    case OptMode::kMax: {
      const std::vector<std::uint8_t> can_reach =
          backward_reach(ctx, ctx.in_target, /*avoid_target=*/false);
      for (int s = 0; s < n; ++s) prob0[s] = !can_reach[s];
      prob1 = prob1_max(ctx);
      break;
    }
    case OptMode::kMin:
    case OptMode::kPolicy: {
      prob0 = sure_avoid_region(ctx);
      const std::vector<std::uint8_t> escape =
          backward_reach(ctx, prob0, /*avoid_target=*/true);
      for (int s = 0; s < n; ++s) prob1[s] = !escape[s];
      break;
    }
  }

  std::vector<double> v(n, 0.0), next(n, 0.0);
  for (int s = 0; s < n; ++s) v[s] = prob1[s] ? 1.0 : 0.0;
  for (long sweep = 0; sweep < ctx.query.max_sweeps; ++sweep) {
    double delta = 0;
    for (int s = 0; s < n; ++s) {
      if (prob1[s]) {
        next[s] = 1.0;
        continue;
      }
      if (prob0[s]) {
        next[s] = 0.0;
        continue;
      }
      double value;
      if (ctx.query.mode == OptMode::kPolicy) {
        value = 0;
        for (const auto& [a, pa] : ctx.query.policy->choice(s)) {
          double row_value = 0;
          for (const auto& e : m.row(s, a)) row_value += e.prob * v[e.succ];
          value += pa * row_value;
        }
      } else {
        const bool maximize = ctx.query.mode == OptMode::kMax;
        value = maximize ? 0.0 : 2.0;
        for (int a : mask_to_actions(ctx.actions[s])) {
          double row_value = 0;
          for (const auto& e : m.row(s, a)) row_value += e.prob * v[e.succ];
          value =
              maximize ? std::max(value, row_value) : std::min(value, row_value);
        }
      }
      delta = std::max(delta, std::abs(value - v[s]));
      next[s] = value;
    }
    v.swap(next);
    if (delta <= ctx.query.tolerance) break;
  }
  return v;
}

}  // namespace

std::vector<double> reach_prob(const Mdp& mdp, const ReachQuery& query) {
  mdp.validate();
  QueryContext ctx(mdp, query);
  if (query.horizon == kUnboundedHorizon) return unbounded_reach(ctx);
  if (query.horizon < 0) throw InvalidConfig("negative horizon");
  return bounded_reach(ctx);
}

double reach_prob_after_action(const Mdp& mdp, int state, int action,
                               const ReachQuery& query) {
  if (!mdp.enabled(state, action))
    throw InvalidInput("action " + std::to_string(action) +
                       " is disabled in state " + std::to_string(state));
  ReachQuery continuation = query;
  if (query.horizon != kUnboundedHorizon) {
    if (query.horizon < 1)
      throw InvalidConfig("action-conditioned query needs horizon >= 1");
    continuation.horizon = query.horizon - 1;
  }
  const std::vector<double> v = reach_prob(mdp, continuation);
  double acc = 0;
  for (const auto& e : mdp.row(state, action)) acc += e.prob * v[e.succ];
  return acc;
}

namespace {
OptMode complement_mode(OptMode mode) {
  switch (mode) {
    case OptMode::kMin:
      return OptMode::kMax;
    case OptMode::kMax:
      return OptMode::kMin;
    default:
      return OptMode::kPolicy;
  }
}
}  // namespace

std::vector<double> avoid_prob(const Mdp& mdp, const ReachQuery& query) {
  ReachQuery dual = query;
  dual.mode = complement_mode(query.mode);
  std::vector<double> v = reach_prob(mdp, dual);
  for (double& x : v) x = 1.0 - x;
  return v;
}

double avoid_prob_after_action(const Mdp& mdp, int state, int action,
                               const ReachQuery& query) {
  ReachQuery dual = query;
  dual.mode = complement_mode(query.mode);
  return 1.0 - reach_prob_after_action(mdp, state, action, dual);
}

}  // namespace shieldlab::mdp
