#pragma once

// Schema helpers shared by the file readers. Errors carry a dotted path to
// the offending field.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fhmdp/solver.hpp"

namespace fhmdp::detail {

nlohmann::json parse_json(std::string_view text);

const nlohmann::json& get_field(const nlohmann::json& obj, const char* key, const std::string& where);
std::string get_string(const nlohmann::json& obj, const char* key, const std::string& where);
std::string get_optional_string(const nlohmann::json& obj, const char* key);
double as_number(const nlohmann::json& v, const std::string& where);
double get_number(const nlohmann::json& obj, const char* key, const std::string& where);
std::size_t as_index(const nlohmann::json& v, const std::string& where);
std::size_t get_index(const nlohmann::json& obj, const char* key, const std::string& where);
const nlohmann::json& get_array(const nlohmann::json& obj, const char* key, const std::string& where);

std::vector<std::vector<double>> number_matrix(const nlohmann::json& rows, const std::string& where);
ValueTable values_from_rows(const std::vector<std::vector<double>>& rows, const std::string& where);
Policy decisions_from_rows(const nlohmann::json& rows, std::size_t state_count, const std::string& where);

std::string dump(const nlohmann::ordered_json& doc);

}  // namespace fhmdp::detail
