#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "echolab/fidelity_series.hpp"
#include "echolab/map_params.hpp"
#include "echolab/quantum_state.hpp"

namespace echolab::semiclassics {

/// Discretization of the dephasing-representation integrals.
///
/// The initial momenta form the uniform grid p0_j = 2 pi j / p0_grid_size
/// covering the whole momentum torus. Point sources theta0 are drawn from
/// stream (seed, member), the same streams qmap::ensemble_member_state uses,
/// so exact and semiclassical ensembles with equal seeds share their theta0.
struct SemiclassicalConfig {
    std::size_t p0_grid_size = 16384;
    std::size_t r0_count = 500;
    std::uint64_t seed = 0;
};

/// theta0 of point source `member`.
double r0_draw(std::uint64_t seed, std::size_t member);

/// m(theta0, t) = grid mean over p0 of exp(i sigma dS/eps), dS along the
/// unperturbed trajectory from (theta0, p0).
cplx m_semiclassical(double theta0, const MapParams& params, long t, const SemiclassicalConfig& config);

/// m(theta0, t) for t = 0..t_max from a single pass over the trajectories.
std::vector<cplx> m_semiclassical_series(double theta0, const MapParams& params, std::size_t t_max,
                                         const SemiclassicalConfig& config);

/// Ma, Msc = Ma + Mf and Mf with standard errors over the r0 ensemble, t = 0..t_max.
/// Reductions run in member order regardless of `threads`.
FidelitySeries semiclassical_series(const MapParams& params, std::size_t t_max, const SemiclassicalConfig& config,
                                    unsigned threads = 0);

/// |mean over r0 of m(r0, t)|^2.
double mean_part_Ma(const MapParams& params, long t, const SemiclassicalConfig& config, unsigned threads = 0);

/// Mean over r0 of |m(r0, t)|^2.
double semiclassical_fidelity_Msc(const MapParams& params, long t, const SemiclassicalConfig& config,
                                  unsigned threads = 0);

/// Msc - Ma.
double fluctuating_part_Mf(const MapParams& params, long t, const SemiclassicalConfig& config, unsigned threads = 0);

/// dS/eps at time t pooled over every (r0, p0) pair of the configuration,
/// member-major.
std::vector<double> pooled_actions(const MapParams& params, long t, const SemiclassicalConfig& config,
                                   unsigned threads = 0);

/// |mean_j exp(i sigma s_j)|^2, the squared empirical characteristic function.
double Ma_from_characteristic(std::span<const double> samples, double sigma);

}  // namespace echolab::semiclassics
