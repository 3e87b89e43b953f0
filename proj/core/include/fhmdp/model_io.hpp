#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fhmdp/model.hpp"
#include "fhmdp/solver.hpp"

namespace fhmdp {

// Model file, format_version "1" (JSON, see docs/model-format.md):
//
//   {
//     "format_version": "1",
//     "name": "...",                      optional
//     "reward_unit": "...",               optional
//     "notes": ["..."],                   optional
//     "states": [
//       { "label": "F1", "metadata": {"axial_force_N": 50.92},
//         "actions": [
//           { "label": "S1", "metadata": {...}, "reward": 7161.82,
//             "transitions": [{"to_state": 1, "probability": 0.75}, ...] } ] } ]
//   }
//
// States are numbered by position, starting at 1. Omitted transition targets
// have probability 0.
//
// Throws MalformedInput for text that is not JSON or does not follow the
// schema, ValidationError for a model that breaks an invariant.
FiniteHorizonMdp load_model(std::string_view text, ProbabilityCheck check = {});
FiniteHorizonMdp load_model_file(const std::filesystem::path& path, ProbabilityCheck check = {});

// Inverse of load_model on all numeric content; zero-probability targets are
// dropped.
std::string save_model(const FiniteHorizonMdp& mdp);

// Published or previously computed results to compare a solve against.
// A value cell matches when |actual - expected| <= value_tolerance_abs or
// |actual - expected| <= value_tolerance_rel * |expected|.
struct ExpectedResults {
  ValueTable values;
  Policy decisions;
  double value_tolerance_abs = 0.0;
  double value_tolerance_rel = 0.0;
  std::string description;
};

//   {
//     "format_version": "1",
//     "value_tolerance_abs": 0.5, "value_tolerance_rel": 1e-5,
//     "values":    [[v(0,1), ..., v(0,S)], ..., [v(N,1), ...]],    N+1 rows
//     "decisions": [[d(0,1), ..., d(0,S)], ..., [d(N-1,1), ...]]  N rows, 1-based
//   }
ExpectedResults load_expected_results(std::string_view text);
ExpectedResults load_expected_results_file(const std::filesystem::path& path);
std::string save_expected_results(const ExpectedResults& expected);

struct CellMismatch {
  enum class Kind { shape, value, decision };

  Kind kind = Kind::value;
  std::size_t epoch = 0;
  StateId state;
  double expected = 0.0;
  double actual = 0.0;
  std::string message;  // human-readable, 1-based, names the cell
};

// Every value and decision cell of `result` that disagrees with `expected`.
// A shape difference yields a single shape entry.
std::vector<CellMismatch> compare_results(const SolveResult& result, const ExpectedResults& expected);

// Policy file: {"format_version": "1", "decisions": [[...], ...]}, 1-based
// actions, one row per epoch.
Policy load_policy(std::string_view text);
std::string save_policy(const Policy& policy);

// Terminal values: a JSON array of numbers, one per state.
std::vector<double> load_terminal_values(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace fhmdp
