#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "fhmdp/fhmdp.hpp"

namespace fhmdp::cli {

namespace {

struct Config {
  std::string model;
  std::size_t horizon = 10;
  std::string terminal_path;
  std::string format = "table";
  std::string prob_mode = "tolerant";
  double prob_tolerance = 1e-6;
  std::string expected;
  std::string policy_path;
  std::uint64_t seed = 1;
  std::size_t episodes = 100000;
  std::vector<std::size_t> starts;
  std::size_t random_instances = 0;
  std::size_t max_states = 3;
  std::size_t max_actions = 3;
  std::size_t max_horizon = 3;
  double cap = 1e6;
};

// Anything that should end the run with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ProbabilityCheck probability_check(const Config& c) {
  static const std::map<std::string, ProbabilityCheck::Mode> modes{
      {"tolerant", ProbabilityCheck::Mode::tolerant},
      {"strict", ProbabilityCheck::Mode::strict},
      {"renormalize", ProbabilityCheck::Mode::renormalize}};
  return ProbabilityCheck{modes.at(c.prob_mode), c.prob_tolerance};
}

// A readable file wins over a builtin of the same name.
FiniteHorizonMdp resolve_model(const Config& c) {
  if (c.model.empty()) throw UsageError("--model is required");
  if (std::filesystem::is_regular_file(c.model)) return load_model_file(c.model, probability_check(c));
  if (auto mdp = builtin_model(c.model)) return *std::move(mdp);
  throw UsageError(fmt::format("no model file or builtin model named \"{}\"", c.model));
}

ExpectedResults resolve_expected(const Config& c) {
  if (c.expected.empty()) throw UsageError("--expected is required");
  if (std::filesystem::is_regular_file(c.expected)) return load_expected_results_file(c.expected);
  if (c.expected == "drilling") return drilling_expected();
  throw UsageError(fmt::format("no fixture file or builtin fixture named \"{}\"", c.expected));
}

std::vector<double> terminal_values(const Config& c, const FiniteHorizonMdp& mdp) {
  if (c.terminal_path.empty()) return std::vector<double>(mdp.state_count(), 0.0);
  return load_terminal_values(read_text_file(c.terminal_path));
}

int cmd_solve(const Config& c, std::ostream& out) {
  const auto format = parse_report_format(c.format);
  const FiniteHorizonMdp mdp = resolve_model(c);
  const SolveResult result = solve_backward_induction(mdp, Horizon{c.horizon}, terminal_values(c, mdp));
  out << emit_report(result, *format);
  return kSuccess;
}

int cmd_check(const Config& c, std::ostream& out, std::ostream& err) {
  const FiniteHorizonMdp mdp = resolve_model(c);
  const ExpectedResults expected = resolve_expected(c);
  const SolveResult result = solve_backward_induction(mdp, Horizon{c.horizon}, terminal_values(c, mdp));
  const auto mismatches = compare_results(result, expected);

  const std::size_t cells = (result.values.epochs() + 1) * result.values.state_count();
  const std::size_t decisions = result.values.epochs() * result.values.state_count();
  if (mismatches.empty()) {
    fmt::print(out, "ok: {} value cells and {} decision cells match (abs tol {}, rel tol {})\n", cells, decisions,
               expected.value_tolerance_abs, expected.value_tolerance_rel);
    return kSuccess;
  }
  for (const auto& m : mismatches) fmt::print(out, "MISMATCH {}\n", m.message);
  fmt::print(err, "check failed: {} mismatching cell(s)\n", mismatches.size());
  return kMismatch;
}

int cmd_simulate(const Config& c, std::ostream& out) {
  const FiniteHorizonMdp mdp = resolve_model(c);
  Policy policy;
  if (c.policy_path.empty()) {
    policy = solve_backward_induction(mdp, Horizon{c.horizon}).policy;
  } else {
    policy = load_policy(read_text_file(c.policy_path));
    policy.check_compatible(mdp, Horizon{policy.epochs()});
  }

  std::vector<StateId> starts;
  if (c.starts.empty()) {
    for (std::size_t i = 0; i < mdp.state_count(); ++i) starts.push_back(StateId{i});
  } else {
    for (std::size_t s : c.starts) {
      if (s < 1 || s > mdp.state_count()) {
        throw UsageError(fmt::format("--start {} out of range 1..{}", s, mdp.state_count()));
      }
      starts.push_back(StateId::from_one_based(s));
    }
  }

  std::vector<MonteCarloEstimate> estimates;
  for (StateId s : starts) estimates.push_back(simulate_policy(mdp, policy, s, c.episodes, c.seed));

  if (c.format == "csv") {
    out << "start_state,episodes,mean,standard_error,seed\n";
    for (const auto& e : estimates) {
      fmt::print(out, "{},{},{},{},{}\n", e.start_state.one_based(), e.episode_count, e.mean, e.standard_error, e.seed);
    }
  } else if (c.format == "json") {
    out << "[\n";
    for (std::size_t k = 0; k < estimates.size(); ++k) {
      const auto& e = estimates[k];
      fmt::print(out, "  {{\"start_state\": {}, \"episodes\": {}, \"mean\": {}, \"standard_error\": {}, \"seed\": {}}}{}\n",
                 e.start_state.one_based(), e.episode_count, e.mean, e.standard_error, e.seed,
                 k + 1 < estimates.size() ? "," : "");
    }
    out << "]\n";
  } else {
    fmt::print(out, "{:>5}  {:>9}  {:>14}  {:>12}  {}\n", "start", "episodes", "mean", "std_error", "seed");
    for (const auto& e : estimates) {
      fmt::print(out, "{:>5}  {:>9}  {:>14.8g}  {:>12.6g}  {}\n", e.start_state.one_based(), e.episode_count, e.mean,
                 e.standard_error, e.seed);
    }
  }
  return kSuccess;
}

// Largest |enumerated - solved| over epoch-0 values.
double epoch0_gap(const FiniteHorizonMdp& mdp, Horizon horizon, double cap) {
  const SolveResult solved = solve_backward_induction(mdp, horizon);
  const SolveResult enumerated = enumerate_optimal(mdp, horizon, EnumerationOptions{cap});
  double gap = 0.0;
  for (std::size_t i = 0; i < mdp.state_count(); ++i) {
    gap = std::max(gap, std::abs(solved.values.at(0, StateId{i}) - enumerated.values.at(0, StateId{i})));
  }
  return gap;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  constexpr double kTolerance = 1e-9;
  if (c.random_instances == 0 && c.model.empty()) throw UsageError("verify needs --model or --random");
  if (c.random_instances > 0 && !c.model.empty()) throw UsageError("--model and --random are mutually exclusive");

  if (!c.model.empty()) {
    const FiniteHorizonMdp mdp = resolve_model(c);
    const double gap = epoch0_gap(mdp, Horizon{c.horizon}, c.cap);
    const SolveResult solved = solve_backward_induction(mdp, Horizon{c.horizon});
    for (std::size_t i = 0; i < mdp.state_count(); ++i) {
      fmt::print(out, "v_{}(0) = {}\n", i + 1, solved.values.at(0, StateId{i}));
    }
    fmt::print(out, "max |enumeration - backward induction| = {:.3g}\n", gap);
    if (gap > kTolerance) {
      fmt::print(err, "verify failed: gap {:.3g} exceeds {}\n", gap, kTolerance);
      return kMismatch;
    }
    return kSuccess;
  }

  std::mt19937_64 engine(c.seed);
  RandomModelOptions options;
  options.max_states = c.max_states;
  options.max_actions = c.max_actions;
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < c.random_instances; ++k) {
    const FiniteHorizonMdp mdp = random_model(engine, options);
    const Horizon horizon{static_cast<std::size_t>(engine() % (c.max_horizon + 1))};
    const double gap = epoch0_gap(mdp, horizon, c.cap);
    worst = std::max(worst, gap);
    if (gap > kTolerance) {
      ++failures;
      fmt::print(err, "instance {}: {} states, N={}, gap {:.3g}\n", k + 1, mdp.state_count(), horizon.epochs, gap);
    }
  }
  fmt::print(out, "{} random instances (seed {}): {} disagreements, max gap {:.3g}\n", c.random_instances, c.seed,
             failures, worst);
  return failures == 0 ? kSuccess : kMismatch;
}

void add_model_options(CLI::App* sub, Config& c, bool with_terminal) {
  sub->add_option("-m,--model", c.model, "Model file, or a builtin name (drilling, toy3)");
  sub->add_option("-n,--horizon", c.horizon, "Number of decision epochs N")->capture_default_str();
  sub->add_option("--prob-mode", c.prob_mode, "Row-sum check: tolerant, strict or renormalize")
      ->check(CLI::IsMember({"tolerant", "strict", "renormalize"}))
      ->capture_default_str();
  sub->add_option("--prob-tolerance", c.prob_tolerance, "Row-sum tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  if (with_terminal) sub->add_option("--terminal", c.terminal_path, "JSON array of terminal values v(N)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Finite-horizon MDP solver: backward induction, checks and oracles", "fhmdp"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve by backward induction and print value/decision tables");
  add_model_options(solve, c, true);
  solve->add_option("-f,--format", c.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  auto* check = app.add_subcommand("check", "Solve and compare against an expected-results fixture");
  add_model_options(check, c, true);
  check->add_option("-e,--expected", c.expected, "Fixture file, or \"drilling\" for the bundled one");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of a policy's expected total reward");
  add_model_options(simulate, c, false);
  simulate->add_option("--policy", c.policy_path, "Policy file (default: the optimal policy)");
  simulate->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  simulate->add_option("--episodes", c.episodes, "Episodes per start state")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--start", c.starts, "Start state(s), 1-based (default: all)");
  simulate->add_option("-f,--format", c.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Compare backward induction with exhaustive policy enumeration");
  add_model_options(verify, c, false);
  verify->add_option("--random", c.random_instances, "Check this many seeded random instances instead of --model");
  verify->add_option("--seed", c.seed, "Seed for --random")->capture_default_str();
  verify->add_option("--max-states", c.max_states, "Random instances: max states")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--max-actions", c.max_actions, "Random instances: max actions per state")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--max-horizon", c.max_horizon, "Random instances: max N")->capture_default_str();
  verify->add_option("--cap", c.cap, "Enumeration cap (number of policies)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*solve) return cmd_solve(c, out);
    if (*check) return cmd_check(c, out, err);
    if (*simulate) return cmd_simulate(c, out);
    if (*verify) return cmd_verify(c, out, err);
  } catch (const InstanceTooLarge& e) {
    fmt::print(err, "instance too large: {}\n", e.what());
  } catch (const MalformedInput& e) {
    fmt::print(err, "malformed input: {}\n", e.what());
  } catch (const ValidationError& e) {
    fmt::print(err, "validation error: {}\n", e.what());
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
  }
  return kUsageError;
}

}  // namespace fhmdp::cli
