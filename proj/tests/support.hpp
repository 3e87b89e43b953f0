#pragma once

// Test-only helpers. The evaluators here deliberately avoid the library's
// backward recursion so they can serve as independent oracles.

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "fhmdp/fhmdp.hpp"

namespace fhmdp::test {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(FHMDP_DATA_DIR) / name;
}

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(FHMDP_TEST_FIXTURES_DIR) / name;
}

// Expected total reward from `start` by pushing the state distribution
// forward through the epochs: sum_n sum_s P(S_n = s) q(s, d_n(s)).
inline double forward_policy_value(const FiniteHorizonMdp& mdp, const Policy& policy, StateId start) {
  const std::size_t states = mdp.state_count();
  std::vector<double> dist(states, 0.0);
  dist[start.index] = 1.0;
  double total = 0.0;
  for (std::size_t n = 0; n < policy.epochs(); ++n) {
    std::vector<double> next(states, 0.0);
    for (std::size_t s = 0; s < states; ++s) {
      if (dist[s] == 0.0) continue;
      const Action& a = mdp.action(StateId{s}, policy.at(n, StateId{s}));
      total += dist[s] * a.reward;
      for (std::size_t j = 0; j < states; ++j) next[j] += dist[s] * a.transitions[j];
    }
    dist = std::move(next);
  }
  return total;
}

// Best forward_policy_value over every Markov policy, per start state.
inline std::vector<double> brute_force_optimum(const FiniteHorizonMdp& mdp, std::size_t epochs) {
  const std::size_t states = mdp.state_count();
  std::vector<double> best(states, -std::numeric_limits<double>::infinity());
  Policy policy(epochs, states);
  const std::size_t digits = epochs * states;
  while (true) {
    for (std::size_t i = 0; i < states; ++i) {
      best[i] = std::max(best[i], forward_policy_value(mdp, policy, StateId{i}));
    }
    std::size_t d = 0;
    for (; d < digits; ++d) {
      const StateId s{d % states};
      ActionId& a = policy.at(d / states, s);
      if (++a.index < mdp.action_count(s)) break;
      a.index = 0;
    }
    if (d == digits) break;
  }
  return best;
}

// Drilling model rebuilt from the transition pattern (states 1-8 spread over
// i..i+2, states 9-10 within {9, 10}) and the raw reward table, without going
// through the JSON file.
inline FiniteHorizonMdp drilling_from_pattern() {
  const std::vector<std::vector<double>> rewards{
      {7161.82, 7430.09, 5009.24, 2056.31, 498.15},   {8278.23, 8500.39, 6036.86, 2827.92, 854.43},
      {7831.99, 9450.55, 7471.69, 3568.89, 995.89},   {9228.49, 9141.06, 4731.06, 1192.48, 142.72},
      {8061.25, 10198.16, 7858.75, 3344.22, 758.47},  {8909.61, 10270.01, 6290.49, 1871.15, 262.34},
      {9622.59, 10449.93, 7090.61, 2841.58, 658.41},  {10206.75, 10166.77, 5848.13, 1845.82, 313.76},
      {9206.44, 10927.64, 7327.75, 2556.97, 451.9},   {9701.99, 10842.65, 6355.54, 1810.01, 244.43}};
  const double spread[5][3] = {{0.75, 0.15, 0.1}, {0.65, 0.2, 0.15}, {0.5, 0.5, 0}, {0.2, 0.65, 0.15}, {0.15, 0.75, 0.1}};
  const double state9[5][2] = {{0.75, 0.25}, {0.65, 0.35}, {0.5, 0.5}, {0.35, 0.65}, {0.25, 0.75}};
  const double state10[5][2] = {{0.2, 0.8}, {0.15, 0.85}, {0.1, 0.9}, {0.05, 0.95}, {0, 1}};

  std::vector<std::vector<std::vector<double>>> transitions(10, std::vector<std::vector<double>>(5, std::vector<double>(10, 0.0)));
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t k = 0; k < 5; ++k) {
      for (std::size_t d = 0; d < 3; ++d) transitions[i][k][i + d] = spread[k][d];
    }
  }
  for (std::size_t k = 0; k < 5; ++k) {
    transitions[8][k][8] = state9[k][0];
    transitions[8][k][9] = state9[k][1];
    transitions[9][k][8] = state10[k][0];
    transitions[9][k][9] = state10[k][1];
  }
  return FiniteHorizonMdp::from_tables(rewards, transitions);
}

// Optimal drilling decisions as published: decision 2 everywhere except
// states 4 and 8 at the last epoch.
inline Policy published_drilling_policy() {
  Policy p = Policy::constant(10, 10, ActionId{1});
  p.at(9, StateId{3}) = ActionId{0};
  p.at(9, StateId{7}) = ActionId{0};
  return p;
}

}  // namespace fhmdp::test

namespace fhmdp::test {

inline std::string read_fixture(const std::string& name) { return read_text_file(fixture_path(name)); }

}  // namespace fhmdp::test
