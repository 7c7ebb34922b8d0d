// Command-line front end: models, solvers and analyzers wired into
// reproducible runs with CSV outputs and a stable key-value summary block.
//
// Exit codes: 0 success, 2 invalid configuration or input, 3 infeasible
// synthesis.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shieldlab/fairness/io.hpp"
#include "shieldlab/games/fitness.hpp"
#include "shieldlab/games/io.hpp"
#include "shieldlab/games/shields.hpp"
#include "shieldlab/intention/scenario.hpp"
#include "shieldlab/mdp/io.hpp"
#include "shieldlab/models/car_pedestrian.hpp"
#include "shieldlab/models/crossing.hpp"
#include "shieldlab/models/gridworld.hpp"
#include "shieldlab/models/gridworld_sim.hpp"
#include "shieldlab/models/traffic.hpp"

namespace {

using namespace shieldlab;

// Summary block: `key = value` lines, printed in insertion order.
class Summary {
 public:
  template <typename T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << std::setprecision(17) << value;
    rows_.emplace_back(key, os.str());
  }

  void print(const std::string& file) const {
    std::ostringstream block;
    for (const auto& [k, v] : rows_) block << k << " = " << v << '\n';
    std::cout << block.str();
    if (!file.empty()) {
      std::ofstream out(file);
      out << block.str();
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string resolve_out(const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* dir = std::getenv("SHIELDLAB_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / p).string();
}

std::vector<int> parse_targets(const mdp::LabeledMdpFile& file,
                               const std::string& spec) {
  const auto it = file.labels.find(spec);
  if (it != file.labels.end()) return it->second;
  std::vector<int> out;
  std::istringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw InvalidConfig("empty target set");
  return out;
}

fairness::Counters parse_counters(const std::string& text) {
  std::vector<int> v;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
  if (v.size() != 4 && v.size() != 5)
    throw InvalidConfig("counters must be a,a1,b,b1[,z0]");
  fairness::Counters c;
  c.a = v[0];
  c.a1 = v[1];
  c.b = v[2];
  c.b1 = v[3];
  c.z0 = v.size() == 5 ? v[4] : 0;
  return c;
}

std::vector<fairness::ForcedInput> read_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open replay file " + path);
  std::vector<fairness::ForcedInput> out;
  std::string line;
  std::getline(in, line);  // header group,rec,cost[,z]
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string g, r, c, z;
    std::getline(ls, g, ',');
    std::getline(ls, r, ',');
    std::getline(ls, c, ',');
    fairness::ForcedInput f;
    f.group = g == "a" ? 0 : 1;
    f.rec = std::stoi(r);
    f.cost = std::stod(c);
    if (std::getline(ls, z, ',') && !z.empty()) f.z = std::stoi(z);
    out.push_back(f);
  }
  return out;
}

int run_solve_game(const std::string& game_file, const std::string& out,
                   const std::string& summary_file) {
  const games::GameGraph game = games::read_game_file(game_file);
  const games::MaxPermStrategy strategy = games::solve_perfect_info(game);
  int winning_agent = 0;
  for (int s = 0; s < game.agent_count(); ++s)
    if (strategy.winning[game.env_count() + s]) ++winning_agent;
  if (!out.empty()) games::write_strategy_csv_file(resolve_out(out), strategy);

  Summary summary;
  summary.add("command", "solve-game");
  summary.add("env_states", game.env_count());
  summary.add("agent_states", game.agent_count());
  summary.add("winning_agent_states", winning_agent);
  summary.add("initial_winning",
              strategy.winning[game.initial()] ? 1 : 0);
  summary.print(summary_file);
  return strategy.all_empty() ? 3 : 0;
}

int run_synth_delayed(const std::string& game_file, int delay, int memory,
                      const std::string& out,
                      const std::string& summary_file) {
  const games::GameGraph game = games::read_game_file(game_file);
  const games::MaxPermStrategy strategy =
      games::solve_delayed(game, delay, memory);
  std::size_t nonempty = 0;
  for (ActionMask m : strategy.steady)
    if (m != 0) ++nonempty;
  if (!out.empty()) games::write_strategy_csv_file(resolve_out(out), strategy);

  Summary summary;
  summary.add("command", "synth-delayed-shield");
  summary.add("delay", delay);
  summary.add("memory", strategy.memory);
  summary.add("steady_entries", strategy.steady.size());
  summary.add("nonempty_entries", nonempty);
  summary.print(summary_file);
  return strategy.all_empty() ? 3 : 0;
}

int run_fitness(const std::string& game_file, const std::string& kind,
                int memory, int delta_max, const std::string& out,
                const std::string& summary_file) {
  const games::GameGraph game = games::read_game_file(game_file);
  games::FitnessTable table =
      kind == "robustness"
          ? games::robustness_values(game)
          : games::controllability_values(game, memory, delta_max);
  if (!out.empty()) {
    std::ofstream os(resolve_out(out));
    os << "state,value\n";
    for (int s = 0; s < game.agent_count(); ++s)
      os << s << ',' << table.values[s] << '\n';
  }
  long long sum = 0;
  for (int v : table.values)
    if (v != kUnbounded) sum += v;
  Summary summary;
  summary.add("command", "fitness");
  summary.add("kind", kind);
  summary.add("value_sum_bounded", sum);
  summary.print(summary_file);
  return 0;
}

int run_mdp_reach(const std::string& model_file, const std::string& target,
                  const std::string& mode, int horizon, int report_state,
                  const std::string& out, const std::string& summary_file) {
  const mdp::LabeledMdpFile file = mdp::read_mdp_file(model_file);
  mdp::ReachQuery query;
  query.target = parse_targets(file, target);
  query.horizon = horizon;
  if (mode == "min")
    query.mode = mdp::OptMode::kMin;
  else if (mode == "max")
    query.mode = mdp::OptMode::kMax;
  else
    throw InvalidConfig("mode must be min or max");
  const std::vector<double> values = mdp::reach_prob(file.mdp, query);
  if (!out.empty()) {
    std::ofstream os(resolve_out(out));
    os << std::setprecision(17) << "state,prob\n";
    for (int s = 0; s < file.mdp.state_count(); ++s)
      os << s << ',' << values[s] << '\n';
  }
  Summary summary;
  summary.add("command", "mdp-reach");
  summary.add("mode", mode);
  summary.add("target", target);
  if (report_state >= 0) {
    summary.add("state", report_state);
    summary.add("prob", values[report_state]);
  }
  summary.add("prob_state_0", values[0]);
  summary.print(summary_file);
  return 0;
}

int run_synth_prob_shield(const std::string& model_file,
                          const std::string& target, double lambda,
                          int horizon, const std::string& mode,
                          const std::string& out,
                          const std::string& summary_file) {
  const mdp::LabeledMdpFile file = mdp::read_mdp_file(model_file);
  const mdp::ThresholdMode tmode = mode == "absolute"
                                       ? mdp::ThresholdMode::kAbsolute
                                       : mdp::ThresholdMode::kRelative;
  const mdp::ProbShieldTable table = mdp::synth_prob_shield(
      file.mdp, parse_targets(file, target), lambda, horizon, tmode);
  if (!out.empty())
    mdp::write_prob_shield_csv_file(resolve_out(out), file.mdp, table);

  std::size_t allowed = 0, enabled = 0;
  for (int s = 0; s < file.mdp.state_count(); ++s)
    for (int a = 0; a < file.mdp.action_count(); ++a) {
      if (!file.mdp.enabled(s, a)) continue;
      ++enabled;
      if (table.is_allowed(s, a)) ++allowed;
    }
  Summary summary;
  summary.add("command", "synth-prob-shield");
  summary.add("lambda", lambda);
  summary.add("mode", mode);
  summary.add("allowed_pairs", allowed);
  summary.add("enabled_pairs", enabled);
  summary.print(summary_file);
  return 0;
}

int run_synth_fairness(const std::string& variant, const std::string& dist_file,
                       const std::string& prop_name, double kappa, int horizon,
                       double lo, double hi, const std::string& prefix_text,
                       const std::string& out, const std::string& csv_out,
                       const std::string& summary_file) {
  const fairness::InputDistribution dist =
      fairness::read_distribution_csv_file(dist_file);
  const fairness::FairnessProperty prop{fairness::kind_from_name(prop_name),
                                        kappa};
  std::optional<fairness::FairnessShieldTable> table;
  if (variant == "finhzn" || variant == "static-fair") {
    table = fairness::synth_finhzn(dist, prop, horizon);
  } else if (variant == "static-bw") {
    table = fairness::synth_static_bw(dist, prop.kind, lo, hi, horizon);
  } else if (variant == "dynamic") {
    table = fairness::synth_dynamic(dist, prop, horizon,
                                    parse_counters(prefix_text));
  } else {
    throw InvalidConfig("unknown fairness variant " + variant);
  }
  if (!out.empty())
    fairness::write_shield_binary_file(resolve_out(out), *table);
  if (!csv_out.empty())
    fairness::write_shield_csv_file(resolve_out(csv_out), *table);

  Summary summary;
  summary.add("command", "synth-fairness-shield");
  summary.add("variant", variant);
  summary.add("prop", prop_name);
  summary.add("T", horizon);
  summary.add("root_expected_cost", table->root_value());
  summary.add("feasible", table->feasible() ? 1 : 0);
  summary.print(summary_file);
  return table->feasible() ? 0 : 3;
}

int run_periodic_cmd(const std::string& variant, const std::string& dist_file,
                     const std::string& prop_name, double kappa, int horizon,
                     double lo, double hi, int periods, std::uint64_t seed,
                     bool seed_given, const std::string& replay,
                     const std::string& out,
                     const std::string& summary_file) {
  if (!seed_given && replay.empty())
    throw InvalidConfig("stochastic runs need --seed");
  const fairness::InputDistribution dist =
      fairness::read_distribution_csv_file(dist_file);
  fairness::PeriodicConfig config;
  config.variant = fairness::periodic_variant_from_name(variant);
  config.prop = {fairness::kind_from_name(prop_name), kappa};
  config.welfare_lo = lo;
  config.welfare_hi = hi;
  config.horizon = horizon;
  config.periods = periods;
  config.seed = seed;

  std::vector<fairness::ForcedInput> forced;
  if (!replay.empty()) forced = read_replay(replay);
  const fairness::PeriodicRun run = fairness::run_periodic(
      config, dist, replay.empty() ? nullptr : &forced);
  if (!out.empty()) fairness::write_periodic_csv_file(resolve_out(out), run);

  Summary summary;
  summary.add("command", "run-periodic");
  summary.add("variant", variant);
  summary.add("periods", periods);
  summary.add("total_cost", run.total_cost);
  for (std::size_t i = 0; i < run.periods.size(); ++i) {
    summary.add("period_" + std::to_string(i + 1) + "_bias",
                run.periods[i].local_bias);
    summary.add("period_" + std::to_string(i + 1) + "_cumulative_bias",
                run.periods[i].cumulative_bias);
  }
  summary.print(summary_file);
  return 0;
}

int run_simulate_gridworld(int n, int delay, int memory,
                           const std::string& shield, int steps,
                           std::uint64_t seed, const std::string& out,
                           const std::string& summary_file) {
  const models::RobotKidGrid grid = models::build_robot_kid_grid(n);
  models::GridSimConfig config;
  config.delay = delay;
  config.memory = memory < 0 ? delay : memory;
  config.steps = steps;
  config.seed = seed;
  if (shield == "pre")
    config.shield = models::GridShieldKind::kPre;
  else if (shield == "post-robustness")
    config.shield = models::GridShieldKind::kPostRobustness;
  else if (shield == "post-controllability")
    config.shield = models::GridShieldKind::kPostControllability;
  else
    throw InvalidConfig("unknown shield kind " + shield);

  const models::GridSimResult result = models::simulate_gridworld(grid, config);
  if (!out.empty()) {
    std::ofstream os(resolve_out(out));
    os << "step,robot_cell\n";
    for (std::size_t i = 0; i < result.robot_cells.size(); ++i)
      os << i << ',' << result.robot_cells[i] << '\n';
  }
  Summary summary;
  summary.add("command", "simulate-gridworld");
  summary.add("n", n);
  summary.add("delay", delay);
  summary.add("shield", shield);
  summary.add("steps", steps);
  summary.add("score", result.score);
  summary.add("interventions", result.interventions);
  summary.add("safety_violations", result.safety_violations);
  summary.print(summary_file);
  return 0;
}

int run_analyze_intention(const std::string& scenario_file,
                          const std::string& driver, int batch, int max_cf,
                          std::uint64_t seed, double rho_lower,
                          double rho_upper, double sigma_threshold,
                          int oversample, const std::string& out,
                          const std::string& summary_file) {
  const intention::FactoredScenario scenario =
      intention::read_scenario_file(scenario_file);
  if (scenario.name != "traffic")
    throw InvalidConfig("unknown scenario family `" + scenario.name + "`");

  models::DriverKind kind;
  if (driver == "opportunistic")
    kind = models::DriverKind::kOpportunistic;
  else if (driver == "reckless")
    kind = models::DriverKind::kReckless;
  else if (driver == "cautious")
    kind = models::DriverKind::kCautious;
  else
    throw InvalidConfig("unknown driver " + driver);

  intention::EvidenceThresholds thresholds;
  thresholds.rho_lower = rho_lower;
  thresholds.rho_upper = rho_upper;
  thresholds.sigma = sigma_threshold;

  intention::RetrospectiveOptions options;
  options.batch_size = batch;
  options.max_counterfactuals = max_cf;
  options.seed = seed;
  options.oversample = oversample;

  const intention::ModelBuilder builder =
      models::traffic_model_builder(models::TrafficSpec{}, kind, scenario);
  const intention::IntentionReport report =
      intention::retrospective_analysis(builder, scenario, thresholds,
                                        options);
  if (!out.empty())
    intention::write_report_csv_file(resolve_out(out), report);

  Summary summary;
  summary.add("command", "analyze-intention");
  summary.add("driver", driver);
  summary.add("traces", report.traces.size());
  summary.add("counterfactuals", report.counterfactual_count);
  summary.add("sigma", report.combined.sigma);
  summary.add("rho", report.combined.rho.has_value()
                         ? std::to_string(*report.combined.rho)
                         : "undefined");
  summary.add("verdict", intention::verdict_name(report.verdict));
  summary.print(summary_file);
  return 0;
}

int run_fit_transitions(const std::string& samples_file, bool synthetic,
                        int per_cell, std::uint64_t seed, int x_max, int v_max,
                        const std::string& out,
                        const std::string& summary_file) {
  models::CarPedestrianSpec spec;
  spec.x_max = x_max;
  spec.v_max = v_max;
  std::vector<mdp::DynamicsSample> samples;
  if (synthetic) {
    samples = models::synthetic_dynamics_samples(spec, per_cell, seed);
  } else {
    std::ifstream in(samples_file);
    if (!in) throw ParseError("cannot open samples file " + samples_file);
    std::string line;
    std::getline(in, line);  // header speed,command,dx,dv
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string f[4];
      for (auto& x : f) std::getline(ls, x, ',');
      samples.push_back({std::stod(f[0]), std::stod(f[1]), std::stod(f[2]),
                         std::stod(f[3])});
    }
  }
  mdp::FitGrids grids{spec.action_grid, spec.speed_refs, spec.mu_pos,
                      spec.mu_vel};
  const mdp::CarTransitionModel model = mdp::fit_transitions(samples, grids);
  const mdp::Mdp car = model.to_mdp(spec.x_max, spec.v_max);
  if (!out.empty()) mdp::write_mdp_file(resolve_out(out), car);

  Summary summary;
  summary.add("command", "fit-transitions");
  summary.add("samples", samples.size());
  summary.add("car_states", car.state_count());
  summary.add("car_actions", car.action_count());
  summary.print(summary_file);
  return 0;
}

int run_build_model(const std::string& kind, int n, double eps, double delta,
                    std::uint64_t seed, const std::string& out,
                    const std::string& summary_file) {
  Summary summary;
  summary.add("command", "build-model");
  summary.add("kind", kind);
  if (out.empty()) throw InvalidConfig("build-model needs --out");
  const std::string path = resolve_out(out);

  if (kind == "gridworld") {
    models::GridworldSpec spec;
    spec.unsafe_cells = {{4, 4}, {6, 7}};
    games::write_game_file(path, models::build_gridworld(spec));
  } else if (kind == "gridworld-deadend") {
    models::GridworldSpec spec;
    spec.dead_end_pairs = n;
    games::write_game_file(path, models::build_gridworld(spec));
  } else if (kind == "crossing-car" || kind == "crossing-ped") {
    models::CrossingSpec spec;
    const models::CrossingGame game = models::build_crossing_game(
        spec, kind == "crossing-car" ? models::CrossingVariant::kCarCar
                                     : models::CrossingVariant::kCarPedestrian);
    games::write_game_file(path, game.game);
    summary.add("positions", game.positions);
    summary.add("velocities", game.velocities);
  } else if (kind == "ex32") {
    // Four-state MDP with a risky action (back to start with prob eps) and
    // a safe one (escape with prob 1 - delta).
    mdp::Mdp m(4, 2);
    m.add_transition(0, 0, 1, 1.0);          // a: commit
    m.add_transition(1, 0, 3, 1.0 - eps);    // fail
    m.add_transition(1, 0, 0, eps);          // retry
    m.add_transition(0, 1, 3, delta);        // b: small risk
    m.add_transition(0, 1, 2, 1.0 - delta);  // escape
    m.add_transition(2, 0, 2, 1.0);
    m.add_transition(3, 0, 3, 1.0);
    mdp::write_mdp_file(path, m, {{"s3", {3}}, {"safe", {2}}});
  } else if (kind == "traffic-mdp") {
    const models::TrafficModel model =
        models::build_traffic_mdp(models::TrafficSpec{});
    mdp::write_mdp_file(path, model.model.base(), model.model.valuation());
    summary.add("states", model.model.base().state_count());
  } else if (kind == "traffic-scenario") {
    const intention::FactoredScenario scenario =
        models::traffic_reference_scenario(
            models::TrafficSpec{}, models::DriverKind::kOpportunistic, seed);
    intention::write_scenario_file(path, scenario);
    summary.add("trace_length", scenario.integral_trace.size());
  } else {
    throw InvalidConfig("unknown model kind " + kind);
  }
  summary.add("out", path);
  summary.print(summary_file);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shieldlab: safety games, probabilistic and fairness shields, "
               "intention analysis"};
  app.require_subcommand(1);

  std::string game_file, model_file, dist_file, scenario_file, samples_file;
  std::string out, csv_out, summary_file, target, mode = "max";
  std::string kind, variant, shield = "pre", driver = "opportunistic";
  std::string prop_name = "dp", prefix_text = "0,0,0,0", replay;
  int delay = 0, memory = -1, delta_max = 3, horizon = -1, report_state = -1;
  int n = 2, steps = 2000, periods = 1, batch = 5, max_cf = 50, per_cell = 40;
  int x_max = 40, v_max = 20, oversample = 1;
  double lambda = 0.9, kappa = 0.1, lo = 0.0, hi = 1.0, eps = 0.5,
         delta = 0.1;
  double rho_lower = 0.25, rho_upper = 0.75, sigma_threshold = 0.5;
  std::uint64_t seed = 0;
  bool synthetic = false;

  auto add_summary = [&](CLI::App* cmd) {
    cmd->add_option("--summary", summary_file, "also write the summary here");
  };

  auto* solve = app.add_subcommand("solve-game", "perfect-information solve");
  solve->add_option("--game", game_file)->required();
  solve->add_option("--out", out);
  add_summary(solve);

  auto* synth_delayed = app.add_subcommand(
      "synth-delayed-shield", "maximally permissive strategy under delay");
  synth_delayed->add_option("--game", game_file)->required();
  synth_delayed->add_option("--delay", delay)->required();
  synth_delayed->add_option("--memory", memory);
  synth_delayed->add_option("--out", out);
  add_summary(synth_delayed);

  auto* fitness = app.add_subcommand("fitness", "robustness/controllability");
  fitness->add_option("--game", game_file)->required();
  fitness->add_option("--kind", kind)
      ->check(CLI::IsMember({"robustness", "controllability"}))
      ->required();
  fitness->add_option("--memory", memory);
  fitness->add_option("--delta-max", delta_max);
  fitness->add_option("--out", out);
  add_summary(fitness);

  auto* reach = app.add_subcommand("mdp-reach", "reachability probabilities");
  reach->add_option("--model", model_file)->required();
  reach->add_option("--target", target)->required();
  reach->add_option("--mode", mode);
  reach->add_option("--horizon", horizon);
  reach->add_option("--state", report_state);
  reach->add_option("--out", out);
  add_summary(reach);

  auto* prob_shield =
      app.add_subcommand("synth-prob-shield", "probabilistic safety shield");
  prob_shield->add_option("--model", model_file)->required();
  prob_shield->add_option("--target", target)->required();
  prob_shield->add_option("--lambda", lambda)->required();
  prob_shield->add_option("--horizon", horizon);
  prob_shield->add_option("--mode", mode)
      ->check(CLI::IsMember({"relative", "absolute"}));
  prob_shield->add_option("--out", out);
  add_summary(prob_shield);

  auto* fair = app.add_subcommand("synth-fairness-shield",
                                  "cost-minimal fairness shield");
  fair->add_option("variant", variant)
      ->check(CLI::IsMember({"finhzn", "static-fair", "static-bw", "dynamic"}))
      ->required();
  fair->add_option("--dist", dist_file)->required();
  fair->add_option("--prop", prop_name);
  fair->add_option("--kappa", kappa);
  fair->add_option("--T", horizon)->required();
  fair->add_option("--l", lo);
  fair->add_option("--u", hi);
  fair->add_option("--prefix", prefix_text);
  fair->add_option("--out", out);
  fair->add_option("--csv", csv_out);
  add_summary(fair);

  auto* periodic = app.add_subcommand("run-periodic", "periodic shielding run");
  periodic->add_option("--variant", variant)
      ->check(CLI::IsMember({"static-fair", "static-bw", "dynamic"}))
      ->required();
  periodic->add_option("--dist", dist_file)->required();
  periodic->add_option("--prop", prop_name);
  periodic->add_option("--kappa", kappa);
  periodic->add_option("--T", horizon)->required();
  periodic->add_option("--l", lo);
  periodic->add_option("--u", hi);
  periodic->add_option("--periods", periods);
  auto* periodic_seed = periodic->add_option("--seed", seed);
  periodic->add_option("--replay", replay);
  periodic->add_option("--out", out);
  add_summary(periodic);

  auto* grid = app.add_subcommand("simulate-gridworld",
                                  "shielded robot-and-kid play");
  grid->add_option("--n", n);
  grid->add_option("--delay", delay)->required();
  grid->add_option("--memory", memory);
  grid->add_option("--shield", shield)
      ->check(CLI::IsMember({"pre", "post-robustness",
                             "post-controllability"}));
  grid->add_option("--steps", steps);
  grid->add_option("--seed", seed)->required();
  grid->add_option("--out", out);
  add_summary(grid);

  auto* intent = app.add_subcommand("analyze-intention",
                                    "retrospective intention analysis");
  intent->add_option("--scenario", scenario_file)->required();
  intent->add_option("--driver", driver);
  intent->add_option("--batch", batch);
  intent->add_option("--max-cf", max_cf);
  intent->add_option("--seed", seed)->required();
  intent->add_option("--rho-lower", rho_lower);
  intent->add_option("--rho-upper", rho_upper);
  intent->add_option("--sigma", sigma_threshold);
  intent->add_option("--oversample", oversample);
  intent->add_option("--out", out);
  add_summary(intent);

  auto* fit = app.add_subcommand("fit-transitions",
                                 "fit car dynamics from probe samples");
  fit->add_option("--samples", samples_file);
  fit->add_flag("--synthetic", synthetic, "use the bundled synthetic probe");
  fit->add_option("--per-cell", per_cell);
  fit->add_option("--seed", seed);
  fit->add_option("--x-max", x_max);
  fit->add_option("--v-max", v_max);
  fit->add_option("--out", out);
  add_summary(fit);

  auto* build = app.add_subcommand("build-model", "emit bundled models");
  build->add_option("--kind", kind)->required();
  build->add_option("--n", n);
  build->add_option("--eps", eps);
  build->add_option("--delta", delta);
  build->add_option("--seed", seed);
  build->add_option("--out", out);
  add_summary(build);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return run_solve_game(game_file, out, summary_file);
    if (synth_delayed->parsed())
      return run_synth_delayed(game_file, delay,
                               memory < 0 ? delay : memory, out, summary_file);
    if (fitness->parsed())
      return run_fitness(game_file, kind, memory < 0 ? delta_max : memory,
                         delta_max, out, summary_file);
    if (reach->parsed())
      return run_mdp_reach(model_file, target, mode,
                           horizon < 0 ? mdp::kUnboundedHorizon : horizon,
                           report_state, out, summary_file);
    if (prob_shield->parsed())
      return run_synth_prob_shield(
          model_file, target, lambda,
          horizon < 0 ? mdp::kUnboundedHorizon : horizon,
          mode == "max" ? "relative" : mode, out, summary_file);
    if (fair->parsed())
      return run_synth_fairness(variant, dist_file, prop_name, kappa, horizon,
                                lo, hi, prefix_text, out, csv_out,
                                summary_file);
    if (periodic->parsed())
      return run_periodic_cmd(variant, dist_file, prop_name, kappa, horizon,
                              lo, hi, periods, seed,
                              periodic_seed->count() > 0, replay, out,
                              summary_file);
    if (grid->parsed())
      return run_simulate_gridworld(n, delay, memory, shield, steps, seed, out,
                                    summary_file);
    if (intent->parsed())
      return run_analyze_intention(scenario_file, driver, batch, max_cf, seed,
                                   rho_lower, rho_upper, sigma_threshold,
                                   oversample, out, summary_file);
    if (fit->parsed())
      return run_fit_transitions(samples_file, synthetic, per_cell, seed,
                                 x_max, v_max, out, summary_file);
    if (build->parsed())
      return run_build_model(kind, n, eps, delta, seed, out, summary_file);
  } catch (const InfeasibleState& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
