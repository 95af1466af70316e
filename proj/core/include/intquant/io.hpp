#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "intquant/types.hpp"

namespace intquant {

// 17 significant digits, '.' decimal point regardless of locale.
std::string format_double(double v);

// {"dim": N, "entries": [[re, im], ...]} in row-major order
nlohmann::ordered_json operator_to_json(const CMatrix& A);
CMatrix operator_from_json(const nlohmann::json& j);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Leading "# " lines carry the version and the config (one-line JSON).
std::string csv_document(const CsvTable& table, const nlohmann::ordered_json& config);
// JSON document {"version", "config", ...body}; floats keep 17 digits.
std::string json_document(const nlohmann::ordered_json& body, const nlohmann::ordered_json& config);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace intquant
