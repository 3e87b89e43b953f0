#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "fhmdp/model.hpp"
#include "fhmdp/solver.hpp"

namespace fhmdp {

// ---------------------------------------------------------------------------
// Exhaustive enumeration

struct EnumerationOptions {
  // Largest number of Markov policies enumerate_optimal will visit.
  double policy_cap = 1e6;
};

// Number of Markov policies for (mdp, horizon): prod_i |A_i|^N. Returned as
// a double since realistic instances overflow 64-bit integers.
double markov_policy_count(const FiniteHorizonMdp& mdp, Horizon horizon);

// Brute-force optimum: evaluates every Markov policy with evaluate_policy and
// keeps the componentwise maximum of the epoch-0 values.
//
// The returned policy is the lexicographically smallest one (decisions
// ordered epoch-major, then by state) whose epoch-0 value reaches the
// maximum in every state, up to 1e-12 relative rounding slack. Its full value
// table is returned with row 0 replaced by the exact componentwise maxima.
//
// Throws InstanceTooLarge when markov_policy_count exceeds the cap.
SolveResult enumerate_optimal(const FiniteHorizonMdp& mdp, Horizon horizon, EnumerationOptions options = {});

// ---------------------------------------------------------------------------
// Monte Carlo simulation

struct EpisodeStep {
  std::size_t epoch = 0;
  StateId state;
  ActionId action;
  double reward = 0.0;
  StateId next_state;
};

struct EpisodeTrace {
  std::vector<EpisodeStep> steps;
  double total_reward = 0.0;
};

struct MonteCarloEstimate {
  StateId start_state;
  std::size_t episode_count = 0;
  double mean = 0.0;
  double standard_error = 0.0;  // sample std-dev (n-1) / sqrt(n); 0 for one episode
  std::uint64_t seed = 0;
};

// Seed of episode `episode` under master seed `seed`. Independent of how
// many episodes are run.
std::uint64_t episode_seed(std::uint64_t seed, std::uint64_t episode);

// Inverse-CDF draw from a transition row with u in [0, 1). Mass lost to
// rounding goes to the last state with positive probability.
StateId sample_next_state(const TransitionRow& row, double u);

// One trajectory of policy from start_state through all policy.epochs()
// stages, driven by the given engine.
EpisodeTrace simulate_episode(const FiniteHorizonMdp& mdp, const Policy& policy, StateId start_state,
                              std::mt19937_64& engine);

// Mean and standard error of the total reward over `episodes` independent
// episodes. Deterministic in (mdp, policy, start_state, episodes, seed).
MonteCarloEstimate simulate_policy(const FiniteHorizonMdp& mdp, const Policy& policy, StateId start_state,
                                   std::size_t episodes, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Random instances for property and equivalence checks

struct RandomModelOptions {
  std::size_t max_states = 3;
  std::size_t max_actions = 3;
  double max_reward = 10.0;  // rewards drawn uniformly from [0, max_reward)
  // Probability that a transition entry is forced to zero (sparser rows).
  double zero_fraction = 0.3;
};

// Random valid model: 1..max_states states, 1..max_actions actions per
// state, rows normalized to sum to 1 within 1e-12.
FiniteHorizonMdp random_model(std::mt19937_64& engine, const RandomModelOptions& options = {});

}  // namespace fhmdp
