#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "echolab/map_params.hpp"

namespace echolab::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Everything that determines a run. Unset optionals and empty lists fall
/// back to the preset's defaults; `threads` never affects results.
struct ExperimentConfig {
    std::string preset;
    double scale = 1.0;
    std::uint64_t seed = 42;
    std::string out_dir = "out";
    std::vector<std::string> formats{"csv", "json"};
    bool plot = false;
    unsigned threads = 0;

    std::vector<double> K0;
    std::vector<double> sigma;
    std::vector<std::size_t> N;
    std::optional<double> epsilon;
    std::optional<std::size_t> steps;
    std::optional<std::size_t> members;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> p0_grid;

    bool wants(const std::string& format) const;
};

nlohmann::json to_json(const ExperimentConfig& config);
/// Accepts either a bare config object or a run manifest (uses its "config").
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// hbar = 2 pi / N, epsilon = sigma hbar, k0 = K0 / hbar. Requires N >= 2.
MapParams derive_params(double K0, double sigma, std::size_t N);

/// Largest power of two not above max(min_n, N * scale).
std::size_t scale_dimension(std::size_t N, double scale, std::size_t min_n = 64);
/// max(floor_count, round(count * scale)).
std::size_t scale_count(std::size_t count, double scale, std::size_t floor_count = 1);

}  // namespace echolab::cli
