#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fhmdp/solver.hpp"

namespace fhmdp {

enum class ReportFormat { table, csv, json };

std::optional<ReportFormat> parse_report_format(std::string_view name);

// Serializes value and decision tables, 1-based throughout.
//   table: v_i(n) rows then d_i(n) rows across epochs 0..N, values to 6
//          significant digits, "-" for the undefined terminal decision
//   csv:   epoch,state,value,decision (decision empty at epoch N), values in
//          shortest round-trip form
//   json:  {"format_version","epochs","state_count","values","decisions"}
//          with full-precision values
std::string emit_report(const SolveResult& result, ReportFormat format);

// Reads a json-format report back.
SolveResult parse_json_report(std::string_view text);

}  // namespace fhmdp
