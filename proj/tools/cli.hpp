#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace intquant::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalError = 3, kValidationError = 4 };

// Flat run configuration; file keys match the field names.
struct RunConfig {
    int dim = 16;
    int grid_radial = 64;
    int grid_angular = 128;
    std::string weight_family = "constant";
    double weight_param = 0.0;
    std::string output = "-";  // "-" writes to standard output
    std::string format;        // json | csv; empty picks the command's natural format
    long long seed = 0;

    void validate() const;
    nlohmann::ordered_json to_json() const;
};

// Applies the keys of a flat JSON object; unknown keys and wrong types throw
// std::invalid_argument.
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);

// argv without the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace intquant::cli
