#include "fhmdp/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "fhmdp/errors.hpp"

namespace fhmdp {

double row_sum(std::span<const double> probabilities) {
  double sum = 0.0;
  for (double p : probabilities) sum += p;
  return sum;
}

TransitionRow::TransitionRow(std::vector<double> probabilities, ProbabilityCheck check)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw ValidationError("transition row is empty");
  for (std::size_t j = 0; j < probabilities_.size(); ++j) {
    const double p = probabilities_[j];
    if (!std::isfinite(p)) {
      throw ValidationError(fmt::format("probability to state {} is not finite", j + 1));
    }
    if (p < 0.0) {
      throw ValidationError(fmt::format("negative probability {} to state {}", p, j + 1));
    }
  }

  const double sum = row_sum(probabilities_);
  using Mode = ProbabilityCheck::Mode;
  if (check.mode == Mode::strict) {
    if (sum != 1.0) {
      throw ValidationError(fmt::format("transition row sums to {} (strict mode requires exactly 1)", sum));
    }
    return;
  }
  if (!(std::abs(sum - 1.0) <= check.tolerance)) {
    throw ValidationError(fmt::format("transition row sums to {} (tolerance {})", sum, check.tolerance));
  }
  if (check.mode == Mode::renormalize && sum != 1.0) {
    for (double& p : probabilities_) p /= sum;
  }
}

FiniteHorizonMdp::FiniteHorizonMdp(std::vector<State> states, std::string reward_unit)
    : states_(std::move(states)), reward_unit_(std::move(reward_unit)) {
  if (states_.empty()) throw ValidationError("model has no states");
  const std::size_t n = states_.size();
  for (std::size_t s = 0; s < n; ++s) {
    const State& st = states_[s];
    if (st.actions.empty()) throw ValidationError(fmt::format("state {} has no actions", s + 1));
    for (std::size_t a = 0; a < st.actions.size(); ++a) {
      const Action& act = st.actions[a];
      if (!std::isfinite(act.reward)) {
        throw ValidationError(fmt::format("state {} action {}: reward is not finite", s + 1, a + 1));
      }
      if (act.transitions.size() != n) {
        throw ValidationError(fmt::format("state {} action {}: transition row has {} entries, expected {}",
                                          s + 1, a + 1, act.transitions.size(), n));
      }
    }
  }
}

FiniteHorizonMdp FiniteHorizonMdp::from_tables(const std::vector<std::vector<double>>& rewards,
                                               const std::vector<std::vector<std::vector<double>>>& transitions,
                                               ProbabilityCheck check) {
  if (rewards.size() != transitions.size()) {
    throw ValidationError("reward and transition tables disagree on the number of states");
  }
  std::vector<State> states;
  states.reserve(rewards.size());
  for (std::size_t s = 0; s < rewards.size(); ++s) {
    if (rewards[s].size() != transitions[s].size()) {
      throw ValidationError(fmt::format("state {}: reward and transition tables disagree on action count", s + 1));
    }
    State st;
    st.label = fmt::format("s{}", s + 1);
    for (std::size_t a = 0; a < rewards[s].size(); ++a) {
      try {
        st.actions.push_back(Action{fmt::format("a{}", a + 1), {}, rewards[s][a],
                                    TransitionRow(transitions[s][a], check)});
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("state {} action {}: {}", s + 1, a + 1, e.what()));
      }
    }
    states.push_back(std::move(st));
  }
  return FiniteHorizonMdp(std::move(states));
}

std::size_t FiniteHorizonMdp::action_count(StateId s) const {
  if (!contains(s)) throw InvalidArgument(fmt::format("state {} out of range", s.one_based()));
  return states_[s.index].actions.size();
}

std::size_t FiniteHorizonMdp::max_action_count() const {
  std::size_t m = 0;
  for (const State& st : states_) m = std::max(m, st.actions.size());
  return m;
}

}  // namespace fhmdp
