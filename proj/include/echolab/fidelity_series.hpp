#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "echolab/map_params.hpp"

namespace echolab {

/// How an ensemble of initial conditions was drawn.
struct EnsembleInfo {
    std::string initial_state;   // "point", "gaussian" or "classical"
    std::size_t members = 0;
    std::uint64_t seed = 0;
    std::size_t p0_grid = 0;     // semiclassical momentum grid, 0 if unused
};

/// Averaged fidelity columns indexed by integer time t = 0..steps()-1.
///
/// Exact columns (M, M_err) and semiclassical columns (Ma, Msc, Mf and their
/// errors) are each either fully populated or empty. At t = 0 the columns
/// hold 1, 1, 1, 0 respectively.
struct FidelitySeries {
    MapParams params;
    EnsembleInfo ensemble;

    std::vector<double> M;
    std::vector<double> M_err;

    std::vector<double> Ma;
    std::vector<double> Msc;
    std::vector<double> Mf;
    std::vector<double> Msc_err;
    std::vector<double> Mf_err;

    bool has_exact() const { return !M.empty(); }
    bool has_semiclassical() const { return !Msc.empty(); }

    std::size_t steps() const { return has_exact() ? M.size() : Msc.size(); }
};

}  // namespace echolab
