#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adrhp/model.hpp"

namespace adrhp {

/// Experiment settings alongside the model; everything a CLI run needs.
struct ExperimentConfig {
    ModelSpec model;
    double theta = 5.0;
    double dx = 1e-3;  // grid step for PDE / mean-intensity curves
    std::vector<int> n_list = {8, 16, 32, 64, 128, 256};
    int replicas = 16;
    int max_replicas = 512;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::vector<double> snapshot_times;
    int jobs = 0;
    int n = 64;  // single-run commands
};

// Parse a JSON config file; throws std::invalid_argument with a location
// hint on schema errors.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

// JSON rendering of the assumption report (used by the validate command).
std::string assumption_report_json(const AssumptionReport& rep);

}  // namespace adrhp
