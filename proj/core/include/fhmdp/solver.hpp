#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fhmdp/model.hpp"

namespace fhmdp {

// v(n, i) for n in 0..epochs and every state; row `epochs` holds the
// terminal values.
class ValueTable {
 public:
  ValueTable() = default;
  ValueTable(std::size_t epochs, std::size_t state_count)
      : epochs_(epochs), state_count_(state_count), values_((epochs + 1) * state_count, 0.0) {}

  std::size_t epochs() const { return epochs_; }
  std::size_t state_count() const { return state_count_; }

  std::span<const double> row(std::size_t epoch) const {
    return {values_.data() + epoch * state_count_, state_count_};
  }
  std::span<double> row(std::size_t epoch) { return {values_.data() + epoch * state_count_, state_count_}; }

  double at(std::size_t epoch, StateId s) const { return values_[epoch * state_count_ + s.index]; }
  double& at(std::size_t epoch, StateId s) { return values_[epoch * state_count_ + s.index]; }

  friend bool operator==(const ValueTable&, const ValueTable&) = default;

 private:
  std::size_t epochs_ = 0;
  std::size_t state_count_ = 0;
  std::vector<double> values_;
};

// Markov decision rule d(n, i) for n in 0..epochs-1.
class Policy {
 public:
  Policy() = default;
  Policy(std::size_t epochs, std::size_t state_count)
      : epochs_(epochs), state_count_(state_count), decisions_(epochs * state_count) {}

  // Same action at every epoch and state.
  static Policy constant(std::size_t epochs, std::size_t state_count, ActionId action);

  std::size_t epochs() const { return epochs_; }
  std::size_t state_count() const { return state_count_; }

  ActionId at(std::size_t epoch, StateId s) const { return decisions_[epoch * state_count_ + s.index]; }
  ActionId& at(std::size_t epoch, StateId s) { return decisions_[epoch * state_count_ + s.index]; }

  std::span<const ActionId> row(std::size_t epoch) const {
    return {decisions_.data() + epoch * state_count_, state_count_};
  }

  // Throws InvalidArgument unless the shape matches (mdp, horizon) and every
  // decision names an existing action of its state.
  void check_compatible(const FiniteHorizonMdp& mdp, Horizon horizon) const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::size_t epochs_ = 0;
  std::size_t state_count_ = 0;
  std::vector<ActionId> decisions_;
};

struct SolveResult {
  ValueTable values;
  Policy policy;
};

// q(s, a) + sum_j p(j | s, a) * next_values[j], summed in ascending j.
// Throws InvalidArgument for an unknown state/action or a next_values vector
// of the wrong length.
double one_step_lookahead(const FiniteHorizonMdp& mdp, StateId state, ActionId action,
                          std::span<const double> next_values);

// Backward induction from the terminal row (zeros unless given) down to
// epoch 0. Ties between actions go to the lowest action index.
SolveResult solve_backward_induction(const FiniteHorizonMdp& mdp, Horizon horizon);
SolveResult solve_backward_induction(const FiniteHorizonMdp& mdp, Horizon horizon,
                                     std::span<const double> terminal_values);

// Expected total reward of a fixed Markov policy, same recursion without the
// max. For the policy returned by solve_backward_induction the table is
// bitwise identical to the solver's.
ValueTable evaluate_policy(const FiniteHorizonMdp& mdp, const Policy& policy, Horizon horizon);
ValueTable evaluate_policy(const FiniteHorizonMdp& mdp, const Policy& policy, Horizon horizon,
                           std::span<const double> terminal_values);

}  // namespace fhmdp
