#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lab.hpp"
#include "models.hpp"

namespace cubeph {

inline constexpr int kSchemaVersion = 1;

/// One experiment, read from a JSON file. Every downstream constraint is
/// checked by parse_config, before anything is sampled.
struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    ModelSpec model;
    std::vector<int> q_list;
    std::vector<int> n_list;
    int trials = 1;
    std::uint64_t seed = 0;
    std::vector<TimePair> pairs;
    int histogram_l = 3;
    /// Empty when the config has no such grid.
    Grid lambda_grid;
    Grid x_grid;
    std::string out;
};

/// Throws ConfigError with a message naming the offending key.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// Extra checks for the grids that `estimate mgf` and `estimate rate` need.
void require_lambda_grid(const ExperimentConfig& config);
void require_x_grid(const ExperimentConfig& config);

}  // namespace cubeph
