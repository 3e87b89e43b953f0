#include "fhmdp/solver.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "fhmdp/errors.hpp"

namespace fhmdp {

namespace {

// Unchecked inner kernel shared by the solver and the evaluator so both
// produce identical bits for the same (state, action, next row).
double lookahead(const Action& action, std::span<const double> next_values) {
  const auto p = action.transitions.probabilities();
  double expected = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) expected += p[j] * next_values[j];
  return action.reward + expected;
}

void check_terminal(const FiniteHorizonMdp& mdp, std::span<const double> terminal_values) {
  if (terminal_values.size() != mdp.state_count()) {
    throw InvalidArgument(fmt::format("terminal values have length {}, model has {} states",
                                      terminal_values.size(), mdp.state_count()));
  }
}

ValueTable start_table(const FiniteHorizonMdp& mdp, Horizon horizon, std::span<const double> terminal_values) {
  ValueTable table(horizon.epochs, mdp.state_count());
  auto last = table.row(horizon.epochs);
  std::copy(terminal_values.begin(), terminal_values.end(), last.begin());
  return table;
}

}  // namespace

Policy Policy::constant(std::size_t epochs, std::size_t state_count, ActionId action) {
  Policy p(epochs, state_count);
  std::fill(p.decisions_.begin(), p.decisions_.end(), action);
  return p;
}

void Policy::check_compatible(const FiniteHorizonMdp& mdp, Horizon horizon) const {
  if (epochs_ != horizon.epochs || state_count_ != mdp.state_count()) {
    throw InvalidArgument(fmt::format("policy is {} epochs x {} states, expected {} x {}", epochs_,
                                      state_count_, horizon.epochs, mdp.state_count()));
  }
  for (std::size_t n = 0; n < epochs_; ++n) {
    for (std::size_t i = 0; i < state_count_; ++i) {
      const StateId s{i};
      if (!mdp.contains(s, at(n, s))) {
        throw InvalidArgument(fmt::format("policy at epoch {} state {} selects action {}, state has {}", n,
                                          s.one_based(), at(n, s).one_based(), mdp.action_count(s)));
      }
    }
  }
}

double one_step_lookahead(const FiniteHorizonMdp& mdp, StateId state, ActionId action,
                          std::span<const double> next_values) {
  if (!mdp.contains(state)) throw InvalidArgument(fmt::format("state {} out of range", state.one_based()));
  if (!mdp.contains(state, action)) {
    throw InvalidArgument(fmt::format("action {} out of range for state {}", action.one_based(), state.one_based()));
  }
  if (next_values.size() != mdp.state_count()) {
    throw InvalidArgument(fmt::format("next values have length {}, model has {} states", next_values.size(),
                                      mdp.state_count()));
  }
  return lookahead(mdp.action(state, action), next_values);
}

SolveResult solve_backward_induction(const FiniteHorizonMdp& mdp, Horizon horizon) {
  const std::vector<double> zeros(mdp.state_count(), 0.0);
  return solve_backward_induction(mdp, horizon, zeros);
}

SolveResult solve_backward_induction(const FiniteHorizonMdp& mdp, Horizon horizon,
                                     std::span<const double> terminal_values) {
  check_terminal(mdp, terminal_values);
  SolveResult result{start_table(mdp, horizon, terminal_values), Policy(horizon.epochs, mdp.state_count())};

  for (std::size_t n = horizon.epochs; n-- > 0;) {
    const auto next = result.values.row(n + 1);
    for (std::size_t i = 0; i < mdp.state_count(); ++i) {
      const State& state = mdp.states()[i];
      std::size_t best_action = 0;
      double best = lookahead(state.actions[0], next);
      for (std::size_t k = 1; k < state.actions.size(); ++k) {
        const double candidate = lookahead(state.actions[k], next);
        if (candidate > best) {  // strict: ties keep the lower index
          best = candidate;
          best_action = k;
        }
      }
      result.values.at(n, StateId{i}) = best;
      result.policy.at(n, StateId{i}) = ActionId{best_action};
    }
  }
  return result;
}

ValueTable evaluate_policy(const FiniteHorizonMdp& mdp, const Policy& policy, Horizon horizon) {
  const std::vector<double> zeros(mdp.state_count(), 0.0);
  return evaluate_policy(mdp, policy, horizon, zeros);
}

ValueTable evaluate_policy(const FiniteHorizonMdp& mdp, const Policy& policy, Horizon horizon,
                           std::span<const double> terminal_values) {
  check_terminal(mdp, terminal_values);
  policy.check_compatible(mdp, horizon);
  ValueTable table = start_table(mdp, horizon, terminal_values);

  for (std::size_t n = horizon.epochs; n-- > 0;) {
    const auto next = table.row(n + 1);
    for (std::size_t i = 0; i < mdp.state_count(); ++i) {
      const StateId s{i};
      table.at(n, s) = lookahead(mdp.action(s, policy.at(n, s)), next);
    }
  }
  return table;
}

}  // namespace fhmdp
