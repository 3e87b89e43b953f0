#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace fhmdp {

// Indices are 0-based inside the library. Files, reports and the CLI use
// 1-based numbering; convert with one_based() / from_one_based().
struct StateId {
  std::size_t index = 0;

  constexpr std::size_t one_based() const { return index + 1; }
  static constexpr StateId from_one_based(std::size_t i) { return StateId{i - 1}; }
  friend constexpr auto operator<=>(StateId, StateId) = default;
};

struct ActionId {
  std::size_t index = 0;

  constexpr std::size_t one_based() const { return index + 1; }
  static constexpr ActionId from_one_based(std::size_t i) { return ActionId{i - 1}; }
  friend constexpr auto operator<=>(ActionId, ActionId) = default;
};

// Number of decision stages. Values exist for epochs 0..epochs, decisions
// for epochs 0..epochs-1.
struct Horizon {
  std::size_t epochs = 0;
};

// How transition rows are checked when a model is built.
//   tolerant:    |sum - 1| <= tolerance
//   strict:      sum == 1 exactly (ascending-index summation)
//   renormalize: as tolerant, then every entry is divided by the sum
struct ProbabilityCheck {
  enum class Mode { tolerant, strict, renormalize };

  Mode mode = Mode::tolerant;
  double tolerance = 1e-6;
};

// Sum of a row in ascending index order. All row sums in the library go
// through this so validation and reporting agree bit for bit.
double row_sum(std::span<const double> probabilities);

// Dense probability distribution over next states.
class TransitionRow {
 public:
  // Throws ValidationError on a negative or non-finite entry or a sum
  // outside the configured tolerance.
  explicit TransitionRow(std::vector<double> probabilities, ProbabilityCheck check = {});

  std::span<const double> probabilities() const { return probabilities_; }
  std::size_t size() const { return probabilities_.size(); }
  double operator[](std::size_t j) const { return probabilities_[j]; }

 private:
  std::vector<double> probabilities_;
};

// Free-form numeric annotations (axial force, feed rate, ...). Never read by
// the solver.
using Metadata = std::map<std::string, double>;

struct Action {
  std::string label;
  Metadata metadata;
  double reward = 0.0;
  TransitionRow transitions;
};

struct State {
  std::string label;
  Metadata metadata;
  std::vector<Action> actions;
};

// A finite-horizon MDP with stationary rewards and transitions. Immutable
// after construction; every invariant is checked in the constructor.
class FiniteHorizonMdp {
 public:
  FiniteHorizonMdp(std::vector<State> states, std::string reward_unit = {});

  // Convenience for small hand-written and generated models.
  // rewards[s][a], transitions[s][a][next].
  static FiniteHorizonMdp from_tables(const std::vector<std::vector<double>>& rewards,
                                      const std::vector<std::vector<std::vector<double>>>& transitions,
                                      ProbabilityCheck check = {});

  std::size_t state_count() const { return states_.size(); }
  std::size_t action_count(StateId s) const;
  std::size_t max_action_count() const;

  bool contains(StateId s) const { return s.index < states_.size(); }
  bool contains(StateId s, ActionId a) const {
    return contains(s) && a.index < states_[s.index].actions.size();
  }

  // Unchecked accessors; callers validate ids with contains().
  const State& state(StateId s) const { return states_[s.index]; }
  const Action& action(StateId s, ActionId a) const { return states_[s.index].actions[a.index]; }
  std::span<const State> states() const { return states_; }

  const std::string& reward_unit() const { return reward_unit_; }

  // Optional descriptive fields carried through model files.
  std::string name;
  std::vector<std::string> notes;

 private:
  std::vector<State> states_;
  std::string reward_unit_;
};

}  // namespace fhmdp
