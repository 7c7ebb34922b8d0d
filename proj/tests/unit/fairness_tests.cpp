#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "shieldlab/fairness/io.hpp"

using namespace shieldlab;
using namespace fairness;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

InputDistribution random_distribution(std::mt19937_64& rng, int cost_count) {
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::vector<InputAtom> atoms;
  double total = 0;
  for (int g = 0; g < 2; ++g)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < cost_count; ++c) {
        InputAtom atom;
        atom.group = g;
        atom.rec = r;
        atom.cost = std::round(unit(rng) * 10) / 10.0;
        atom.prob = unit(rng);
        total += atom.prob;
        atoms.push_back(atom);
      }
  for (InputAtom& atom : atoms) atom.prob /= total;
  // Normalize exactly enough for the 1e-12 validation gate.
  double sum = 0;
  for (const InputAtom& atom : atoms) sum += atom.prob;
  atoms.back().prob += 1.0 - sum;
  return InputDistribution(std::move(atoms));
}

// Exhaustive oracle over full traces (no counter abstraction): minimal
// expected cost of any history-dependent shield that ends fair.
double oracle_value(const InputDistribution& dist, const FairnessProperty& prop,
                    int horizon, const Counters& counters, int t) {
  if (t == horizon)
    return property_satisfied(prop, counters) ? 0.0 : kInf;
  double acc = 0;
  for (const InputAtom& x : dist.atoms()) {
    if (x.prob <= 0) continue;
    double best = kInf;
    for (int y = 0; y < 2; ++y) {
      const double step_cost = y == x.rec ? 0.0 : x.cost;
      const double rest = oracle_value(
          dist, prop, horizon, advance_counters(counters, x.group, y), t + 1);
      best = std::min(best, step_cost + rest);
    }
    acc += x.prob * best;
  }
  return acc;
}

// Enumerates every input sequence, follows the synthesized decisions and
// invokes the callback with the end-of-horizon counters and total cost.
void enumerate_runs(const FairnessShieldTable& table,
                    const InputDistribution& dist, int t,
                    const Counters& counters, double cost,
                    const std::function<void(const Counters&, double)>& done) {
  if (t == table.horizon()) {
    done(counters, cost);
    return;
  }
  for (int i = 0; i < dist.size(); ++i) {
    const InputAtom& x = dist.atom(i);
    if (x.prob <= 0) continue;
    const int y = table.decide(t, counters, i);
    enumerate_runs(table, dist, t + 1, advance_counters(counters, x.group, y),
                   cost + (y == x.rec ? 0.0 : x.cost), done);
  }
}

}  // namespace

TEST_CASE("property evaluation on counters") {
  const FairnessProperty dp{FairnessKind::kDemographicParity, 0.2};
  CHECK(eval_property(dp, {24, 12, 24, 17, 0}) ==
        doctest::Approx(5.0 / 24.0));
  CHECK(eval_property(dp, {0, 0, 7, 3, 0}) == 0.0);  // null denominator
  CHECK(eval_property(dp, {10, 9, 10, 1, 0}) == doctest::Approx(0.8));

  const FairnessProperty di{FairnessKind::kDisparateImpact, 0.8};
  CHECK(eval_property(di, {10, 4, 10, 5, 0}) == doctest::Approx(0.8));
  CHECK(property_satisfied(di, {10, 4, 10, 5, 0}));
  CHECK_FALSE(property_satisfied(di, {10, 2, 10, 5, 0}));
  CHECK_FALSE(property_satisfied(di, {0, 0, 10, 5, 0}));

  const FairnessProperty eq{FairnessKind::kEqualOpportunity, 0.2};
  CHECK(eval_property(eq, {4, 1, 8, 6, 3}) ==
        doctest::Approx(std::abs(0.25 - 0.75)));
}

TEST_CASE("trace cost sums intervention costs up to a prefix") {
  const std::vector<DecisionStep> trace = {
      {0, 1, 0.3, 0, -1},  // flipped, pays 0.3
      {1, 0, 0.9, 0, -1},  // followed
      {0, 0, 0.7, 1, -1},  // flipped, pays 0.7
      {1, 1, 0.2, 1, -1},  // followed
  };
  CHECK(trace_cost(trace, 0) == 0.0);
  CHECK(trace_cost(trace, 2) == doctest::Approx(0.3));
  CHECK(trace_cost(trace, 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(trace_cost(trace, 5), InvalidInput);
}

TEST_CASE("finite-horizon synthesis matches the exhaustive trace oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> tpick(1, 5);
  std::uniform_int_distribution<int> cpick(1, 2);
  std::uniform_real_distribution<double> kpick(0.05, 0.9);
  for (int round = 0; round < 20; ++round) {
    const InputDistribution dist = random_distribution(rng, cpick(rng));
    const int horizon = tpick(rng);
    const FairnessProperty prop{FairnessKind::kDemographicParity, kpick(rng)};
    const FairnessShieldTable table = synth_finhzn(dist, prop, horizon);
    const double oracle = oracle_value(dist, prop, horizon, {}, 0);
    if (std::isinf(oracle)) {
      CHECK_FALSE(table.feasible());
      continue;
    }
    CHECK(table.root_value() == doctest::Approx(oracle).epsilon(1e-9));

    // Hard fairness: every feasible trace ends within the threshold.
    enumerate_runs(table, dist, 0, {}, 0.0,
                   [&](const Counters& end, double) {
                     CHECK(property_satisfied(prop, end));
                   });
  }
}

TEST_CASE("kappa = 1 never intervenes for demographic parity") {
  std::mt19937_64 rng(7);
  const InputDistribution dist = random_distribution(rng, 2);
  const FairnessProperty prop{FairnessKind::kDemographicParity, 1.0};
  const FairnessShieldTable table = synth_finhzn(dist, prop, 6);
  CHECK(table.root_value() == 0.0);
  enumerate_runs(table, dist, 0, {}, 0.0,
                 [&](const Counters&, double cost) { CHECK(cost == 0.0); });
}

TEST_CASE("forced end-game: near-horizon imbalance makes the DP pay") {
  // At counters (24,12,24,17) with two steps left and kappa = 0.2, a
  // followed group-b acceptance leads to (24,12,25,18) whose bias exceeds
  // the threshold, so the value reflects a forced final correction.
  const FairnessProperty prop{FairnessKind::kDemographicParity, 0.2};
  const InputDistribution dist = InputDistribution::uniform({0.5});
  const int horizon = 50;
  const FairnessShieldTable table = synth_finhzn(dist, prop, horizon);
  REQUIRE(table.feasible());

  const Counters tense{24, 12, 24, 17, 0};
  CHECK(eval_property(prop, tense) > prop.kappa);  // transiently biased
  CHECK(eval_property(prop, {24, 12, 25, 18, 0}) ==
        doctest::Approx(0.22).epsilon(1e-12));
  const double tense_value = table.value_at(48, tense);
  CHECK(tense_value > 0.0);

  // Relaxed counters two steps from the end cost nothing.
  CHECK(table.value_at(48, {24, 12, 24, 12, 0}) == 0.0);
}

TEST_CASE("counter abstraction: equal counters get equal decisions") {
  std::mt19937_64 rng(11);
  const InputDistribution dist = random_distribution(rng, 2);
  const FairnessProperty prop{FairnessKind::kDemographicParity, 0.15};
  const FairnessShieldTable table = synth_finhzn(dist, prop, 6);
  REQUIRE(table.feasible());
  // Two different histories with the same counters: (a/acc, b/rej) vs
  // (b/rej, a/acc) both land on {1,1,1,0}.
  Counters c1 = advance_counters(advance_counters({}, 0, 1), 1, 0);
  Counters c2 = advance_counters(advance_counters({}, 1, 0), 0, 1);
  REQUIRE(c1 == c2);
  for (int i = 0; i < dist.size(); ++i)
    CHECK(table.decide(2, c1, i) == table.decide(2, c2, i));
}

TEST_CASE("apply advances counters and rejects infeasible cells") {
  std::mt19937_64 rng(13);
  const InputDistribution dist = random_distribution(rng, 1);
  const FairnessProperty prop{FairnessKind::kDemographicParity, 0.3};
  const FairnessShieldTable table = synth_finhzn(dist, prop, 4);
  REQUIRE(table.feasible());
  const ApplyResult step = apply_shield(table, 0, {}, 0, 1, 0.4);
  CHECK(step.counters.a == 1);
  CHECK(step.counters.a1 == step.decision);
  CHECK_FALSE(step.pending.has_value());
}

TEST_CASE("EqOpp bookkeeping uses the pending slot and six counters") {
  InputDistribution dist = InputDistribution::uniform({0.5}, 0.7);
  const FairnessProperty prop{FairnessKind::kEqualOpportunity, 0.5};
  const FairnessShieldTable table = synth_finhzn(dist, prop, 4);
  REQUIRE(table.feasible());

  const ApplyResult step = apply_shield(table, 0, {}, 1, 1, 0.5);
  REQUIRE(step.pending.has_value());
  CHECK(step.counters == Counters{});  // deferred until the reveal
  const Counters revealed1 =
      advance_counters_eqopp(step.counters, *step.pending, 1);
  CHECK(revealed1.b == 1);
  CHECK(revealed1.b1 == step.decision);
  const Counters revealed0 =
      advance_counters_eqopp(step.counters, *step.pending, 0);
  CHECK(revealed0.z0 == 1);
  CHECK(revealed0.b == 0);

  // EqOpp synthesis needs the ground-truth conditionals.
  const InputDistribution no_z = InputDistribution::uniform({0.5});
  CHECK_THROWS_AS(synth_finhzn(no_z, prop, 3), InvalidConfig);
}

TEST_CASE("EqOpp synthesis matches an exhaustive oracle over reveals") {
  // Oracle over full (input, z) trees without the counter abstraction.
  const InputDistribution dist = InputDistribution::uniform({0.3}, 0.6);
  const FairnessProperty prop{FairnessKind::kEqualOpportunity, 0.34};
  const int horizon = 3;

  std::function<double(const Counters&, int)> oracle =
      [&](const Counters& c, int t) -> double {
    if (t == horizon) return property_satisfied(prop, c) ? 0.0 : kInf;
    double acc = 0;
    for (const InputAtom& x : dist.atoms()) {
      double best = kInf;
      for (int y = 0; y < 2; ++y) {
        Counters z0 = c;
        z0.z0 += 1;
        const double value =
            x.p_z1 * oracle(advance_counters_eqopp(c, {x.group, y}, 1), t + 1) +
            (1 - x.p_z1) * oracle(z0, t + 1);
        best = std::min(best, (y == x.rec ? 0.0 : x.cost) + value);
      }
      acc += x.prob * best;
    }
    return acc;
  };

  const FairnessShieldTable table = synth_finhzn(dist, prop, horizon);
  const double expect = oracle({}, 0);
  if (std::isinf(expect)) {
    CHECK_FALSE(table.feasible());
  } else {
    CHECK(table.root_value() == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("bounded-welfare machinery") {
  SUBCASE("keep-just-above-l sequence satisfies the lemma constraints") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < 50; ++round) {
      double l = unit(rng) * 0.8;
      double u = l + 0.05 + unit(rng) * (1.0 - l - 0.05);
      if (u > 1.0) u = 1.0;
      const int n0 = bw_balance_requirement(l, u);
      long long prev = -1;
      for (int n = n0; n <= 100; ++n) {
        const long long x = static_cast<long long>(std::ceil(l * n));
        CHECK(l * n <= x);
        CHECK(x <= u * n);
        if (prev >= 0) {
          CHECK(x - prev >= 0);
          CHECK(x - prev <= 1);
        }
        prev = x;
      }
    }
  }

  SUBCASE("balance probability equals direct summation") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < 200; ++round) {
      const int horizon = 1 + static_cast<int>(unit(rng) * 60);
      const int n = static_cast<int>(unit(rng) * (horizon + 2));
      const double p = unit(rng);
      // Direct binomial summation in long double.
      long double direct = 0;
      for (int k = n; k <= horizon - n; ++k) {
        long double term = 1;
        for (int i = 0; i < k; ++i)
          term *= static_cast<long double>(horizon - i) / (k - i);
        term *= std::pow(static_cast<long double>(p), k);
        term *= std::pow(static_cast<long double>(1 - p), horizon - k);
        direct += term;
      }
      const double got = balance_probability(horizon, p, n);
      CHECK(std::abs(got - static_cast<double>(direct)) <= 1e-12);
    }
    CHECK(balance_probability(10, 0.3, 0) == doctest::Approx(1.0));
    CHECK(balance_probability(2, 0.5, 1) == doctest::Approx(0.5));
    CHECK(balance_probability(2, 0.5, 2) == 0.0);
  }

  SUBCASE("short horizons admit no balanced trace and stay transparent") {
    CHECK_FALSE(bw_balanced_traces_exist(2, 0.2, 0.4));
    const InputDistribution dist = InputDistribution::uniform({0.5});
    const FairnessShieldTable table =
        synth_static_bw(dist, FairnessKind::kDemographicParity, 0.2, 0.4, 2);
    CHECK(table.feasible());
    CHECK(table.root_value() == 0.0);
    enumerate_runs(table, dist, 0, {}, 0.0,
                   [&](const Counters&, double cost) { CHECK(cost == 0.0); });
  }

  SUBCASE("l = 0, u = 1 never intervenes") {
    const InputDistribution dist = InputDistribution::uniform({0.5});
    const FairnessShieldTable table =
        synth_static_bw(dist, FairnessKind::kDemographicParity, 0.0, 1.0, 6);
    CHECK(table.root_value() == 0.0);
  }

  SUBCASE("balanced traces end with both welfares in range") {
    const InputDistribution dist = InputDistribution::uniform({0.5});
    const double l = 0.3, u = 0.6;
    const int horizon = 8;
    const FairnessShieldTable table =
        synth_static_bw(dist, FairnessKind::kDemographicParity, l, u, horizon);
    REQUIRE(table.feasible());
    const int n = bw_balance_requirement(l, u);
    enumerate_runs(table, dist, 0, {}, 0.0,
                   [&](const Counters& end, double) {
                     if (end.a < n || end.b < n) return;  // exempt
                     const double wa = group_welfare(
                         FairnessKind::kDemographicParity, end, 0);
                     const double wb = group_welfare(
                         FairnessKind::kDemographicParity, end, 1);
                     CHECK(wa >= l);
                     CHECK(wa <= u);
                     CHECK(wb >= l);
                     CHECK(wb <= u);
                   });
  }

  SUBCASE("mediant inequality: concatenation stays inside the bounds") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> seg(1, 8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < 200; ++round) {
      const double l = unit(rng) * 0.5;
      const double u = l + 0.1 + unit(rng) * (1.0 - l - 0.1);
      long long num = 0, den = 0;
      bool any = false;
      for (int s = 0; s < seg(rng); ++s) {
        const int d = 1 + static_cast<int>(unit(rng) * 20);
        const int lo = static_cast<int>(std::ceil(l * d));
        const int hi = static_cast<int>(std::floor(u * d));
        if (lo > hi) continue;
        std::uniform_int_distribution<int> pick(lo, hi);
        const int x = pick(rng);
        num += x;
        den += d;
        any = true;
      }
      if (!any) continue;
      const double welfare = static_cast<double>(num) / den;
      CHECK(welfare >= l - 1e-12);
      CHECK(welfare <= u + 1e-12);
    }
  }
}

TEST_CASE("static-fair concatenation with equal denominators stays fair") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int round = 0; round < 200; ++round) {
    const double kappa = 0.05 + unit(rng) * 0.5;
    const int den_a = 1 + static_cast<int>(unit(rng) * 10);
    const int den_b = 1 + static_cast<int>(unit(rng) * 10);
    const int segments = 1 + static_cast<int>(unit(rng) * 6);
    Counters total;
    for (int s = 0; s < segments; ++s) {
      // Random segment counters with the shared denominators and bias
      // within kappa.
      for (int attempt = 0;; ++attempt) {
        REQUIRE(attempt < 1000);
        Counters seg{den_a, 0, den_b, 0, 0};
        seg.a1 = static_cast<int>(unit(rng) * (den_a + 1));
        seg.b1 = static_cast<int>(unit(rng) * (den_b + 1));
        if (eval_property({FairnessKind::kDemographicParity, kappa}, seg) <=
            kappa) {
          total = total + seg;
          break;
        }
      }
    }
    CHECK(eval_property({FairnessKind::kDemographicParity, kappa}, total) <=
          kappa + 1e-12);
  }
}

TEST_CASE("dynamic synthesis: assumption handling and prefix conditioning") {
  const FairnessProperty prop{FairnessKind::kDemographicParity, 0.1};
  const InputDistribution dist = InputDistribution::uniform({0.5});

  SUBCASE("empty prefix equals finite-horizon synthesis") {
    const FairnessShieldTable dynamic = synth_dynamic(dist, prop, 5, {});
    const FairnessShieldTable finite = synth_finhzn(dist, prop, 5);
    CHECK(dynamic.root_value() == doctest::Approx(finite.root_value()));
    CHECK(dynamic.raw_decisions() == finite.raw_decisions());
    CHECK(dynamic.raw_infeasible() == finite.raw_infeasible());
  }

  SUBCASE("all-b suffix after the skewed prefix is exempted") {
    // Prefix (2,1,98,49) is perfectly fair; a suffix of 99 b's and one a
    // violates the feasibility assumption (1/den_a = 1/3 > kappa) and is
    // assigned cost zero rather than infinity.
    const Counters prefix{2, 1, 98, 49, 0};
    const int horizon = 100;
    const FairnessShieldTable table = synth_dynamic(dist, prop, horizon, prefix);
    REQUIRE(table.feasible());

    Counters suffix{1, 1, 99, 49, 0};  // one accepted a, 99 b's
    const Counters total = prefix + suffix;
    CHECK(eval_property(prop, total) > prop.kappa);
    CHECK(1.0 / total.a + 1.0 / total.b > prop.kappa + eval_property(prop, prefix));
    CHECK_FALSE(table.cell_infeasible(horizon, suffix));

    // A balanced suffix is not exempted: the base case enforces fairness.
    Counters balanced{50, 25, 50, 30, 0};
    CHECK(eval_property(prop, prefix + balanced) > prop.kappa);
    CHECK(1.0 / (prefix + balanced).a + 1.0 / (prefix + balanced).b <
          prop.kappa);
    CHECK(table.cell_infeasible(horizon, balanced));
  }

  SUBCASE("small-instance optimality conditioned on the prefix") {
    // Exhaustive oracle on total counters with the per-suffix exemption.
    const Counters prefix{3, 2, 1, 0, 0};
    const FairnessProperty small{FairnessKind::kDemographicParity, 0.4};
    const int horizon = 4;
    const double prefix_bias = eval_property(small, prefix);

    std::function<double(const Counters&, int)> oracle =
        [&](const Counters& c, int t) -> double {
      if (t == horizon) {
        const Counters total = prefix + c;
        if (property_satisfied(small, total)) return 0.0;
        if (total.a == 0 || total.b == 0) return 0.0;
        if (1.0 / total.a + 1.0 / total.b > small.kappa + prefix_bias)
          return 0.0;
        return kInf;
      }
      double acc = 0;
      for (const InputAtom& x : dist.atoms()) {
        double best = kInf;
        for (int y = 0; y < 2; ++y)
          best = std::min(best, (y == x.rec ? 0.0 : x.cost) +
                                    oracle(advance_counters(c, x.group, y),
                                           t + 1));
        acc += x.prob * best;
      }
      return acc;
    };

    const FairnessShieldTable table =
        synth_dynamic(dist, small, horizon, prefix);
    CHECK(table.root_value() == doctest::Approx(oracle({}, 0)).epsilon(1e-9));
  }
}

TEST_CASE("expected cost reproduces the synthesized value") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 10; ++round) {
    const InputDistribution dist = random_distribution(rng, 2);
    const FairnessProperty prop{FairnessKind::kDemographicParity,
                                0.1 + 0.1 * round};
    const FairnessShieldTable table = synth_finhzn(dist, prop, 5);
    if (!table.feasible()) continue;
    CHECK(expected_cost(table, dist, 0, {}) ==
          doctest::Approx(table.root_value()).epsilon(1e-12));
  }
}

TEST_CASE("Monte-Carlo cost agrees with the DP value") {
  std::mt19937_64 rng(37);
  const InputDistribution dist = random_distribution(rng, 2);
  const FairnessProperty prop{FairnessKind::kDemographicParity, 0.25};
  const int horizon = 12;
  const FairnessShieldTable table = synth_finhzn(dist, prop, horizon);
  REQUIRE(table.feasible());

  std::vector<double> cdf;
  double acc = 0;
  for (const InputAtom& x : dist.atoms()) cdf.push_back(acc += x.prob);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int runs = 100000;
  double total = 0, total_sq = 0;
  for (int run = 0; run < runs; ++run) {
    Counters c;
    double cost = 0;
    for (int t = 0; t < horizon; ++t) {
      const double u = unit(rng) * acc;
      int i = 0;
      while (u > cdf[i]) ++i;
      const InputAtom& x = dist.atom(i);
      const int y = table.decide(t, c, i);
      if (y != x.rec) cost += x.cost;
      c = advance_counters(c, x.group, y);
    }
    total += cost;
    total_sq += cost * cost;
  }
  const double mean = total / runs;
  const double var = total_sq / runs - mean * mean;
  const double sem = std::sqrt(var / runs);
  CHECK(std::abs(mean - table.root_value()) <= 3.0 * sem + 1e-9);
}

TEST_CASE("periodic runs: replay, variants, and DI rejection") {
  const FairnessProperty prop{FairnessKind::kDemographicParity, 0.2};
  const InputDistribution dist = InputDistribution::uniform({1.0});

  SUBCASE("one period equals a finite-horizon run") {
    PeriodicConfig config;
    config.variant = PeriodicVariant::kStaticFair;
    config.prop = prop;
    config.horizon = 6;
    config.periods = 1;
    config.seed = 99;
    const PeriodicRun run = run_periodic(config, dist);
    CHECK(run.steps.size() == 6);
    CHECK(run.periods.size() == 1);
    CHECK(run.periods[0].local_bias == run.periods[0].cumulative_bias);
  }

  SUBCASE("forced replay reproduces the skew counterexample") {
    // Period 1: one a rejected, nine b rejected; period 2: nine a
    // accepted, one b accepted. Each period is perfectly fair, the
    // concatenation is maximally biased.
    std::vector<ForcedInput> stream;
    stream.push_back({0, 0, 1.0, -1});
    for (int i = 0; i < 9; ++i) stream.push_back({1, 0, 1.0, -1});
    for (int i = 0; i < 9; ++i) stream.push_back({0, 1, 1.0, -1});
    stream.push_back({1, 1, 1.0, -1});

    PeriodicConfig config;
    config.variant = PeriodicVariant::kStaticFair;
    config.prop = {FairnessKind::kDemographicParity, 0.2};
    config.horizon = 10;
    config.periods = 2;
    const PeriodicRun run = run_periodic(config, dist, &stream);
    CHECK(run.total_cost == 0.0);  // transparent on fair periods
    CHECK(run.periods[0].local_bias == 0.0);
    CHECK(run.periods[1].local_bias == 0.0);
    CHECK(run.periods[1].cumulative_bias == doctest::Approx(0.8));
  }

  SUBCASE("disparate impact is rejected for periodic constructions") {
    PeriodicConfig config;
    config.variant = PeriodicVariant::kDynamic;
    config.prop = {FairnessKind::kDisparateImpact, 0.8};
    config.horizon = 4;
    config.seed = 1;
    CHECK_THROWS_AS(run_periodic(config, dist), InvalidConfig);
    CHECK_THROWS_AS(
        synth_static_bw(dist, FairnessKind::kDisparateImpact, 0.2, 0.4, 4),
        InvalidConfig);
  }

  SUBCASE("dynamic periods keep the cumulative bias under the threshold") {
    PeriodicConfig config;
    config.variant = PeriodicVariant::kDynamic;
    config.prop = {FairnessKind::kDemographicParity, 0.15};
    config.horizon = 8;
    config.periods = 4;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      config.seed = seed;
      const PeriodicRun run = run_periodic(config, dist);
      for (const PeriodSummary& period : run.periods) {
        const Counters& c = period.cumulative;
        const double load =
            (c.a > 0 && c.b > 0) ? 1.0 / c.a + 1.0 / c.b : kInf;
        // Conditional correctness: periods satisfying the feasibility
        // assumption end within the threshold.
        if (load <= config.prop.kappa)
          CHECK(period.cumulative_bias <= config.prop.kappa + 1e-12);
      }
    }
  }
}

TEST_CASE("distribution and shield serialization round-trips") {
  std::mt19937_64 rng(41);
  const InputDistribution dist = random_distribution(rng, 2);
  std::stringstream buffer;
  write_distribution_csv(buffer, dist);
  const InputDistribution back = read_distribution_csv(buffer);
  REQUIRE(back.size() == dist.size());
  for (int i = 0; i < dist.size(); ++i) {
    CHECK(back.atom(i).group == dist.atom(i).group);
    CHECK(back.atom(i).rec == dist.atom(i).rec);
    CHECK(back.atom(i).cost == dist.atom(i).cost);
    CHECK(back.atom(i).prob == doctest::Approx(dist.atom(i).prob));
  }

  const FairnessProperty prop{FairnessKind::kDemographicParity, 0.2};
  const FairnessShieldTable table = synth_finhzn(dist, prop, 5);
  std::stringstream binary(std::ios::in | std::ios::out | std::ios::binary);
  write_shield_binary(binary, table);
  const FairnessShieldTable loaded = read_shield_binary(binary);
  CHECK(loaded.horizon() == table.horizon());
  CHECK(loaded.root_value() == table.root_value());
  CHECK(loaded.raw_decisions() == table.raw_decisions());
  CHECK(loaded.raw_infeasible() == table.raw_infeasible());
}
