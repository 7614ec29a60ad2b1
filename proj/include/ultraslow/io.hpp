#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ultraslow/solver.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow {

inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::json;

/// {"kind": "constant" | "power_law" | "product" | "tabulated", "nu": ..., "coeffs": [...],
///  "samples": [...]}. Constant and power-law weights carry their amplitude as coeffs[0].
json weight_to_json(const Weight& w);
/// Throws ConfigError naming the offending field.
Weight weight_from_json(const json& j);

/// Points lo..hi, evenly spaced in value or in log.
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;
    bool log = false;

    std::vector<double> points() const;
};

/// Everything a CLI run reads from its config file.
struct RunConfig {
    Weight weight = Weight::constant(1.0);
    int dim = 1;
    GridSpec s_grid{1e-6, 10.0, 50, true};
    GridSpec t_grid{0.1, 2.0, 20, false};
    GridSpec x_grid{0.5, 4.0, 8, false};
    std::vector<double> lambdas{-1.0, 0.0, 1.0};
    std::string initial = "gaussian";  // gaussian | one | zero
    FdGrid fd{10.0, 257, 0.5, 400};
    double rtol = 1e-12;
    double tol_scale = 1.0;
    bool hard_asymptotics = false;
    unsigned seed = 20240611;
    std::string out = ".";
};

/// Parse a RunConfig from JSON text; unknown keys are rejected. Throws ConfigError
/// with the parser position or the field path.
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);
json config_to_json(const RunConfig& c);

/// Write a CSV with a header row and %.17g fields.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
/// CSV text for a Field as (t, x, value) rows.
std::string field_to_csv(const Field& f);
/// Pretty JSON (two-space indent, trailing newline).
void write_json(const std::string& path, const json& j);

}  // namespace ultraslow
