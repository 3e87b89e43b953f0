#include "fhmdp/report.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "fhmdp/errors.hpp"
#include "json_util.hpp"

namespace fhmdp {

namespace {

std::string table_report(const SolveResult& result) {
  const ValueTable& v = result.values;
  const std::size_t epochs = v.epochs();
  const std::size_t states = v.state_count();

  // cells[row][col]; row 0 is the header, col 0 the row label.
  auto layout = [&](const std::string& corner, auto&& label, auto&& cell) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{corner};
    for (std::size_t n = 0; n <= epochs; ++n) header.push_back(fmt::format("{}", n));
    cells.push_back(std::move(header));
    for (std::size_t i = 0; i < states; ++i) {
      std::vector<std::string> row{label(i + 1)};
      for (std::size_t n = 0; n <= epochs; ++n) row.push_back(cell(n, StateId{i}));
      cells.push_back(std::move(row));
    }
    return cells;
  };

  const auto values = layout(
      "epoch n", [](std::size_t i) { return fmt::format("v_{}(n)", i); },
      [&](std::size_t n, StateId s) { return fmt::format("{:.6g}", v.at(n, s)); });
  const auto decisions = layout(
      "epoch n", [](std::size_t i) { return fmt::format("d_{}(n)", i); },
      [&](std::size_t n, StateId s) {
        return n < epochs ? fmt::format("{}", result.policy.at(n, s).one_based()) : std::string("-");
      });

  // Shared column widths so the two blocks line up.
  std::vector<std::size_t> width(epochs + 2, 0);
  for (const auto* block : {&values, &decisions}) {
    for (const auto& row : *block) {
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
  }

  std::string out;
  auto emit = [&](const std::string& title, const std::vector<std::vector<std::string>>& block) {
    out += title;
    out += '\n';
    for (const auto& row : block) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c == 0) {
          out += fmt::format("{:<{}}", row[c], width[c]);
        } else {
          out += fmt::format("  {:>{}}", row[c], width[c]);
        }
      }
      out += '\n';
    }
  };
  emit("Expected total reward", values);
  out += '\n';
  emit("Optimal decision", decisions);
  return out;
}

std::string csv_report(const SolveResult& result) {
  const ValueTable& v = result.values;
  std::string out = "epoch,state,value,decision\n";
  for (std::size_t n = 0; n <= v.epochs(); ++n) {
    for (std::size_t i = 0; i < v.state_count(); ++i) {
      const StateId s{i};
      out += fmt::format("{},{},{},", n, s.one_based(), v.at(n, s));
      if (n < v.epochs()) out += fmt::format("{}", result.policy.at(n, s).one_based());
      out += '\n';
    }
  }
  return out;
}

std::string json_report(const SolveResult& result) {
  using nlohmann::ordered_json;
  const ValueTable& v = result.values;
  ordered_json doc;
  doc["format_version"] = "1";
  doc["epochs"] = v.epochs();
  doc["state_count"] = v.state_count();
  ordered_json values = ordered_json::array();
  for (std::size_t n = 0; n <= v.epochs(); ++n) {
    const auto r = v.row(n);
    values.push_back(std::vector<double>(r.begin(), r.end()));
  }
  doc["values"] = std::move(values);
  ordered_json decisions = ordered_json::array();
  for (std::size_t n = 0; n < v.epochs(); ++n) {
    ordered_json row = ordered_json::array();
    for (ActionId a : result.policy.row(n)) row.push_back(a.one_based());
    decisions.push_back(std::move(row));
  }
  doc["decisions"] = std::move(decisions);
  return detail::dump(doc);
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::table;
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  return std::nullopt;
}

std::string emit_report(const SolveResult& result, ReportFormat format) {
  switch (format) {
    case ReportFormat::table:
      return table_report(result);
    case ReportFormat::csv:
      return csv_report(result);
    case ReportFormat::json:
      return json_report(result);
  }
  return {};
}

SolveResult parse_json_report(std::string_view text) {
  const auto doc = detail::parse_json(text);
  if (!doc.is_object()) throw MalformedInput("report must be a JSON object", 1, 1);
  const std::size_t states = detail::get_index(doc, "state_count", "document");
  const std::size_t epochs = detail::get_index(doc, "epochs", "document");
  SolveResult result{detail::values_from_rows(detail::number_matrix(detail::get_array(doc, "values", "document"), "values"),
                                              "values"),
                     detail::decisions_from_rows(detail::get_array(doc, "decisions", "document"), states, "decisions")};
  if (result.values.epochs() != epochs || result.values.state_count() != states || result.policy.epochs() != epochs) {
    throw ValidationError("report tables disagree with its epochs/state_count header");
  }
  return result;
}

}  // namespace fhmdp
