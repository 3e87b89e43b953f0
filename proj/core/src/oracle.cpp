#include "fhmdp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "fhmdp/errors.hpp"

namespace fhmdp {

namespace {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 53 random mantissa bits -> [0, 1). Same on every standard library, unlike
// std::uniform_real_distribution.
double unit_interval(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

}  // namespace

double markov_policy_count(const FiniteHorizonMdp& mdp, Horizon horizon) {
  double count = 1.0;
  for (const State& s : mdp.states()) {
    count *= std::pow(static_cast<double>(s.actions.size()), static_cast<double>(horizon.epochs));
  }
  return count;
}

SolveResult enumerate_optimal(const FiniteHorizonMdp& mdp, Horizon horizon, EnumerationOptions options) {
  const double count = markov_policy_count(mdp, horizon);
  if (count > options.policy_cap) {
    throw InstanceTooLarge(fmt::format("{:.6g} Markov policies exceed the enumeration cap of {:.6g}", count,
                                       options.policy_cap));
  }

  const std::size_t states = mdp.state_count();
  const std::size_t digits = horizon.epochs * states;

  // Visits every policy in lexicographic order: digit 0 is (epoch 0, state 1)
  // and is the most significant.
  auto for_each_policy = [&](auto&& visit) {
    Policy policy(horizon.epochs, states);
    while (true) {
      if (!visit(policy)) return;
      std::size_t d = digits;
      while (true) {
        if (d == 0) return;  // wrapped past the most significant digit
        --d;
        const StateId s{d % states};
        ActionId& a = policy.at(d / states, s);
        if (a.index + 1 < mdp.action_count(s)) {
          ++a.index;
          break;
        }
        a.index = 0;
      }
    }
  };

  std::vector<double> best(states, -std::numeric_limits<double>::infinity());
  for_each_policy([&](const Policy& policy) {
    const ValueTable v = evaluate_policy(mdp, policy, horizon);
    for (std::size_t i = 0; i < states; ++i) best[i] = std::max(best[i], v.at(0, StateId{i}));
    return true;
  });

  SolveResult result;
  bool found = false;
  for_each_policy([&](const Policy& policy) {
    ValueTable v = evaluate_policy(mdp, policy, horizon);
    for (std::size_t i = 0; i < states; ++i) {
      const double slack = 1e-12 * std::max(1.0, std::abs(best[i]));
      if (v.at(0, StateId{i}) < best[i] - slack) return true;
    }
    std::copy(best.begin(), best.end(), v.row(0).begin());
    result = SolveResult{std::move(v), policy};
    found = true;
    return false;
  });
  // A finite MDP always has a Markov policy optimal from every start state.
  if (!found) throw std::logic_error("enumeration found no policy attaining the componentwise maximum");
  return result;
}

std::uint64_t episode_seed(std::uint64_t seed, std::uint64_t episode) { return mix64(seed ^ mix64(episode)); }

StateId sample_next_state(const TransitionRow& row, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] <= 0.0) continue;
    last_positive = j;
    cumulative += row[j];
    if (u < cumulative) return StateId{j};
  }
  return StateId{last_positive};
}

EpisodeTrace simulate_episode(const FiniteHorizonMdp& mdp, const Policy& policy, StateId start_state,
                              std::mt19937_64& engine) {
  if (!mdp.contains(start_state)) {
    throw InvalidArgument(fmt::format("start state {} out of range", start_state.one_based()));
  }
  EpisodeTrace trace;
  trace.steps.reserve(policy.epochs());
  StateId s = start_state;
  for (std::size_t n = 0; n < policy.epochs(); ++n) {
    const ActionId a = policy.at(n, s);
    const Action& action = mdp.action(s, a);
    const StateId next = sample_next_state(action.transitions, unit_interval(engine));
    trace.steps.push_back(EpisodeStep{n, s, a, action.reward, next});
    trace.total_reward += action.reward;
    s = next;
  }
  return trace;
}

MonteCarloEstimate simulate_policy(const FiniteHorizonMdp& mdp, const Policy& policy, StateId start_state,
                                   std::size_t episodes, std::uint64_t seed) {
  if (episodes == 0) throw InvalidArgument("episode count must be at least 1");
  if (!mdp.contains(start_state)) {
    throw InvalidArgument(fmt::format("start state {} out of range", start_state.one_based()));
  }
  policy.check_compatible(mdp, Horizon{policy.epochs()});

  // Welford, reduced in episode order.
  double mean = 0.0;
  double m2 = 0.0;
  std::mt19937_64 engine;
  for (std::size_t e = 0; e < episodes; ++e) {
    engine.seed(episode_seed(seed, e));
    const double x = simulate_episode(mdp, policy, start_state, engine).total_reward;
    const double delta = x - mean;
    mean += delta / static_cast<double>(e + 1);
    m2 += delta * (x - mean);
  }

  MonteCarloEstimate estimate{start_state, episodes, mean, 0.0, seed};
  if (episodes > 1) {
    const double n = static_cast<double>(episodes);
    estimate.standard_error = std::sqrt(m2 / (n - 1.0)) / std::sqrt(n);
  }
  return estimate;
}

FiniteHorizonMdp random_model(std::mt19937_64& engine, const RandomModelOptions& options) {
  auto pick = [&](std::size_t hi) { return 1 + static_cast<std::size_t>(engine() % hi); };
  const std::size_t states = pick(options.max_states);

  std::vector<std::vector<double>> rewards(states);
  std::vector<std::vector<std::vector<double>>> transitions(states);
  for (std::size_t s = 0; s < states; ++s) {
    const std::size_t actions = pick(options.max_actions);
    for (std::size_t a = 0; a < actions; ++a) {
      rewards[s].push_back(options.max_reward * unit_interval(engine));
      std::vector<double> row(states);
      double sum = 0.0;
      for (double& p : row) {
        p = unit_interval(engine) < options.zero_fraction ? 0.0 : unit_interval(engine);
        sum += p;
      }
      if (sum == 0.0) {
        row[engine() % states] = 1.0;
        sum = 1.0;
      }
      for (double& p : row) p /= sum;
      transitions[s].push_back(std::move(row));
    }
  }
  return FiniteHorizonMdp::from_tables(rewards, transitions);
}

}  // namespace fhmdp
