#include "fhmdp/model_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>
#include "json.hpp"

#include "fhmdp/errors.hpp"
#include "json_util.hpp"

namespace fhmdp {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kFormatVersion = "1";

void check_version(const json& doc) {
  const auto version = detail::get_string(doc, "format_version", "");
  if (version != kFormatVersion) {
    throw MalformedInput(fmt::format("unsupported format_version \"{}\" (expected \"{}\")", version, kFormatVersion),
                         0, 0);
  }
}

Metadata read_metadata(const json& parent, const std::string& where) {
  Metadata out;
  if (!parent.contains("metadata")) return out;
  const json& m = parent["metadata"];
  if (!m.is_object()) throw MalformedInput(fmt::format("{}.metadata: expected an object", where), 0, 0);
  for (const auto& [key, value] : m.items()) {
    if (!value.is_number()) {
      throw MalformedInput(fmt::format("{}.metadata.{}: expected a number", where, key), 0, 0);
    }
    out.emplace(key, value.get<double>());
  }
  return out;
}

std::vector<double> read_transitions(const json& action, std::size_t state_count, std::size_t s, std::size_t a,
                                     const std::string& where) {
  std::vector<double> row(state_count, 0.0);
  const json& list = detail::get_array(action, "transitions", where);
  std::set<std::size_t> seen;
  for (std::size_t t = 0; t < list.size(); ++t) {
    const std::string here = fmt::format("{}.transitions[{}]", where, t);
    const json& entry = list[t];
    if (!entry.is_object()) throw MalformedInput(here + ": expected an object", 0, 0);
    const auto target = detail::get_index(entry, "to_state", here);
    const double p = detail::get_number(entry, "probability", here);
    if (target < 1 || target > state_count) {
      throw ValidationError(fmt::format("state {} action {}: transition target {} out of range 1..{}", s + 1, a + 1,
                                        target, state_count));
    }
    if (!seen.insert(target).second) {
      throw ValidationError(fmt::format("state {} action {}: transition target {} listed twice", s + 1, a + 1, target));
    }
    row[target - 1] = p;
  }
  return row;
}

ordered_json matrix_rows(const ValueTable& table) {
  ordered_json rows = ordered_json::array();
  for (std::size_t n = 0; n <= table.epochs(); ++n) {
    const auto r = table.row(n);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

ordered_json decision_rows(const Policy& policy) {
  ordered_json rows = ordered_json::array();
  for (std::size_t n = 0; n < policy.epochs(); ++n) {
    ordered_json row = ordered_json::array();
    for (ActionId a : policy.row(n)) row.push_back(a.one_based());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

namespace detail {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is 1-based and points just past the offending character.
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    const auto line_start = text.rfind('\n', offset == 0 ? 0 : offset - 1);
    const auto from = line_start == std::string_view::npos ? 0 : line_start + 1;
    const auto to = text.find('\n', from);
    const auto context = text.substr(from, std::min<std::size_t>(to == std::string_view::npos ? text.size() - from
                                                                                               : to - from,
                                                                 80));
    throw MalformedInput(fmt::format("parse error at line {}, column {}: near \"{}\"", line, column, context), line,
                         column);
  }
}

const json& get_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw MalformedInput(fmt::format("{}: expected an object", where.empty() ? "document" : where), 0, 0);
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw MalformedInput(fmt::format("{}: missing field \"{}\"", where.empty() ? "document" : where, key), 0, 0);
  }
  return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const json& v = get_field(obj, key, where);
  if (!v.is_string()) throw MalformedInput(fmt::format("{}.{}: expected a string", where, key), 0, 0);
  return v.get<std::string>();
}

std::string get_optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it != obj.end() && it->is_string() ? it->get<std::string>() : std::string{};
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw MalformedInput(fmt::format("{}: expected a number", where), 0, 0);
  return v.get<double>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
  return as_number(get_field(obj, key, where), fmt::format("{}.{}", where, key));
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw MalformedInput(fmt::format("{}: expected an integer", where), 0, 0);
  const auto i = v.get<long long>();
  if (i < 0) throw MalformedInput(fmt::format("{}: expected a non-negative integer", where), 0, 0);
  return static_cast<std::size_t>(i);
}

std::size_t get_index(const json& obj, const char* key, const std::string& where) {
  return as_index(get_field(obj, key, where), fmt::format("{}.{}", where, key));
}

const json& get_array(const json& obj, const char* key, const std::string& where) {
  const json& v = get_field(obj, key, where);
  if (!v.is_array()) throw MalformedInput(fmt::format("{}.{}: expected an array", where, key), 0, 0);
  return v;
}

std::vector<std::vector<double>> number_matrix(const json& rows, const std::string& where) {
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const json& row = rows[r];
    if (!row.is_array()) throw MalformedInput(fmt::format("{}[{}]: expected an array", where, r), 0, 0);
    std::vector<double> values;
    for (std::size_t c = 0; c < row.size(); ++c) values.push_back(as_number(row[c], fmt::format("{}[{}][{}]", where, r, c)));
    out.push_back(std::move(values));
  }
  return out;
}

Policy decisions_from_rows(const json& rows, std::size_t state_count, const std::string& where) {
  Policy policy(rows.size(), state_count);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    const json& row = rows[n];
    if (!row.is_array()) throw MalformedInput(fmt::format("{}[{}]: expected an array", where, n), 0, 0);
    if (row.size() != state_count) {
      throw ValidationError(fmt::format("{}: epoch {} has {} decisions, expected {}", where, n, row.size(), state_count));
    }
    for (std::size_t i = 0; i < state_count; ++i) {
      const std::size_t k = as_index(row[i], fmt::format("{}[{}][{}]", where, n, i));
      if (k == 0) throw ValidationError(fmt::format("{}: epoch {} state {}: actions are numbered from 1", where, n, i + 1));
      policy.at(n, StateId{i}) = ActionId::from_one_based(k);
    }
  }
  return policy;
}

ValueTable values_from_rows(const std::vector<std::vector<double>>& rows, const std::string& where) {
  if (rows.empty()) throw ValidationError(fmt::format("{}: at least the terminal row is required", where));
  const std::size_t width = rows.front().size();
  if (width == 0) throw ValidationError(fmt::format("{}: rows must not be empty", where));
  ValueTable table(rows.size() - 1, width);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (rows[n].size() != width) {
      throw ValidationError(fmt::format("{}: epoch {} has {} values, expected {}", where, n, rows[n].size(), width));
    }
    std::copy(rows[n].begin(), rows[n].end(), table.row(n).begin());
  }
  return table;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

}  // namespace detail

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

FiniteHorizonMdp load_model(std::string_view text, ProbabilityCheck check) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw MalformedInput("model document must be a JSON object", 1, 1);
  check_version(doc);

  const json& states_json = detail::get_array(doc, "states", "");
  const std::size_t state_count = states_json.size();
  if (state_count == 0) throw ValidationError("model has no states");

  std::vector<State> states;
  states.reserve(state_count);
  std::set<std::string> labels;
  for (std::size_t s = 0; s < state_count; ++s) {
    const std::string where = fmt::format("states[{}]", s);
    const json& sj = states_json[s];
    if (!sj.is_object()) throw MalformedInput(where + ": expected an object", 0, 0);
    State state;
    state.label = sj.contains("label") ? detail::get_string(sj, "label", where) : fmt::format("{}", s + 1);
    if (!labels.insert(state.label).second) {
      throw ValidationError(fmt::format("state {}: duplicate label \"{}\"", s + 1, state.label));
    }
    state.metadata = read_metadata(sj, where);

    const json& actions_json = detail::get_array(sj, "actions", where);
    if (actions_json.empty()) throw ValidationError(fmt::format("state {} has no actions", s + 1));
    for (std::size_t a = 0; a < actions_json.size(); ++a) {
      const std::string here = fmt::format("{}.actions[{}]", where, a);
      const json& aj = actions_json[a];
      if (!aj.is_object()) throw MalformedInput(here + ": expected an object", 0, 0);
      const double reward = detail::get_number(aj, "reward", here);
      std::vector<double> row = read_transitions(aj, state_count, s, a, here);
      try {
        state.actions.push_back(Action{aj.contains("label") ? detail::get_string(aj, "label", here) : std::string{},
                                       read_metadata(aj, here), reward, TransitionRow(std::move(row), check)});
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("state {} action {}: {}", s + 1, a + 1, e.what()));
      }
    }
    states.push_back(std::move(state));
  }

  FiniteHorizonMdp mdp(std::move(states), detail::get_optional_string(doc, "reward_unit"));
  mdp.name = detail::get_optional_string(doc, "name");
  if (auto it = doc.find("notes"); it != doc.end() && it->is_array()) {
    for (const json& note : *it) {
      if (note.is_string()) mdp.notes.push_back(note.get<std::string>());
    }
  }
  return mdp;
}

FiniteHorizonMdp load_model_file(const std::filesystem::path& path, ProbabilityCheck check) {
  return load_model(read_text_file(path), check);
}

std::string save_model(const FiniteHorizonMdp& mdp) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  if (!mdp.name.empty()) doc["name"] = mdp.name;
  doc["reward_unit"] = mdp.reward_unit();
  if (!mdp.notes.empty()) doc["notes"] = mdp.notes;
  ordered_json states = ordered_json::array();
  for (const State& state : mdp.states()) {
    ordered_json sj;
    sj["label"] = state.label;
    sj["metadata"] = ordered_json::object();
    for (const auto& [k, v] : state.metadata) sj["metadata"][k] = v;
    ordered_json actions = ordered_json::array();
    for (const Action& action : state.actions) {
      ordered_json aj;
      aj["label"] = action.label;
      aj["metadata"] = ordered_json::object();
      for (const auto& [k, v] : action.metadata) aj["metadata"][k] = v;
      aj["reward"] = action.reward;
      ordered_json transitions = ordered_json::array();
      const auto p = action.transitions.probabilities();
      for (std::size_t j = 0; j < p.size(); ++j) {
        if (p[j] == 0.0) continue;
        transitions.push_back(ordered_json{{"to_state", j + 1}, {"probability", p[j]}});
      }
      aj["transitions"] = std::move(transitions);
      actions.push_back(std::move(aj));
    }
    sj["actions"] = std::move(actions);
    states.push_back(std::move(sj));
  }
  doc["states"] = std::move(states);
  return detail::dump(doc);
}

ExpectedResults load_expected_results(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw MalformedInput("expected-results document must be a JSON object", 1, 1);
  check_version(doc);

  ExpectedResults out;
  out.description = detail::get_optional_string(doc, "description");
  out.value_tolerance_abs = doc.contains("value_tolerance_abs")
                                ? detail::get_number(doc, "value_tolerance_abs", "document")
                                : 0.0;
  out.value_tolerance_rel = doc.contains("value_tolerance_rel")
                                ? detail::get_number(doc, "value_tolerance_rel", "document")
                                : 0.0;
  if (out.value_tolerance_abs < 0 || out.value_tolerance_rel < 0) {
    throw ValidationError("tolerances must be non-negative");
  }

  out.values = detail::values_from_rows(detail::number_matrix(detail::get_array(doc, "values", "document"), "values"),
                                        "values");
  const json& decisions = detail::get_array(doc, "decisions", "document");
  if (decisions.size() != out.values.epochs()) {
    throw ValidationError(fmt::format("decisions have {} epochs but values imply {}", decisions.size(),
                                      out.values.epochs()));
  }
  out.decisions = detail::decisions_from_rows(decisions, out.values.state_count(), "decisions");
  return out;
}

ExpectedResults load_expected_results_file(const std::filesystem::path& path) {
  return load_expected_results(read_text_file(path));
}

std::string save_expected_results(const ExpectedResults& expected) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  if (!expected.description.empty()) doc["description"] = expected.description;
  doc["value_tolerance_abs"] = expected.value_tolerance_abs;
  doc["value_tolerance_rel"] = expected.value_tolerance_rel;
  doc["values"] = matrix_rows(expected.values);
  doc["decisions"] = decision_rows(expected.decisions);
  return detail::dump(doc);
}

std::vector<CellMismatch> compare_results(const SolveResult& result, const ExpectedResults& expected) {
  std::vector<CellMismatch> out;
  const ValueTable& v = result.values;
  if (v.epochs() != expected.values.epochs() || v.state_count() != expected.values.state_count()) {
    CellMismatch m;
    m.kind = CellMismatch::Kind::shape;
    m.message = fmt::format("shape: solved {} epochs x {} states, expected {} x {}", v.epochs(), v.state_count(),
                            expected.values.epochs(), expected.values.state_count());
    out.push_back(std::move(m));
    return out;
  }

  for (std::size_t n = 0; n <= v.epochs(); ++n) {
    for (std::size_t i = 0; i < v.state_count(); ++i) {
      const StateId s{i};
      const double want = expected.values.at(n, s);
      const double got = v.at(n, s);
      const double diff = std::abs(got - want);
      const bool ok = diff <= expected.value_tolerance_abs || diff <= expected.value_tolerance_rel * std::abs(want);
      if (!ok) {
        out.push_back(CellMismatch{CellMismatch::Kind::value, n, s, want, got,
                                   fmt::format("value v_{}({}): expected {}, got {} (diff {:.6g})", s.one_based(), n,
                                               want, got, got - want)});
      }
    }
  }
  for (std::size_t n = 0; n < v.epochs(); ++n) {
    for (std::size_t i = 0; i < v.state_count(); ++i) {
      const StateId s{i};
      const auto want = expected.decisions.at(n, s).one_based();
      const auto got = result.policy.at(n, s).one_based();
      if (want != got) {
        out.push_back(CellMismatch{CellMismatch::Kind::decision, n, s, static_cast<double>(want),
                                   static_cast<double>(got),
                                   fmt::format("decision d_{}({}): expected {}, got {}", s.one_based(), n, want, got)});
      }
    }
  }
  return out;
}

Policy load_policy(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_object()) throw MalformedInput("policy document must be a JSON object", 1, 1);
  check_version(doc);
  const json& rows = detail::get_array(doc, "decisions", "document");
  const std::size_t width = rows.empty() || !rows.front().is_array() ? 0 : rows.front().size();
  if (rows.empty()) {
    // A zero-epoch policy carries no decisions; its width comes from the model.
    return Policy(0, doc.contains("state_count") ? detail::get_index(doc, "state_count", "document") : 0);
  }
  return detail::decisions_from_rows(rows, width, "decisions");
}

std::string save_policy(const Policy& policy) {
  ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["state_count"] = policy.state_count();
  doc["decisions"] = decision_rows(policy);
  return detail::dump(doc);
}

std::vector<double> load_terminal_values(std::string_view text) {
  const json doc = detail::parse_json(text);
  if (!doc.is_array()) throw MalformedInput("terminal values must be a JSON array of numbers", 1, 1);
  std::vector<double> out;
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(detail::as_number(doc[i], fmt::format("[{}]", i)));
  return out;
}

}  // namespace fhmdp
