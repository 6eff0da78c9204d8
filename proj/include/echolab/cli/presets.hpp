#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "echolab/cli/config.hpp"

namespace echolab::cli {

/// Names accepted by run_preset.
const std::vector<std::string>& preset_names();

struct RunResult {
    std::vector<std::string> files;   // written paths, CSVs first
    nlohmann::json manifest;
};

/// Runs one of fig1..fig5 with the overrides in `config`, writing CSVs (and
/// the JSON manifest / gnuplot scripts when requested) into config.out_dir.
/// Throws InputError for an unknown preset and IoError if out_dir is unwritable.
RunResult run_preset(const ExperimentConfig& config);

}  // namespace echolab::cli
