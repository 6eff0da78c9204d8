#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "echolab/fidelity_series.hpp"
#include "echolab/map_params.hpp"
#include "echolab/quantum_state.hpp"

namespace echolab::detail {
class FftPlan;
}

namespace echolab::qmap {

/// Unit-amplitude position eigenstate at the grid point nearest theta0.
QuantumState make_point_source(double theta0, const MapParams& params);

/// Grid index a point source at theta0 snaps to.
std::size_t snap_to_grid(double theta0, std::size_t N);

/// Periodized minimum-uncertainty packet (position variance hbar/2) centred at
/// (theta0, p0). p0 must be an integer multiple of hbar in [-pi, pi).
QuantumState make_gaussian(double theta0, double p0, const MapParams& params);

/// Unitary DFT between representations. No-op if already in the target rep.
QuantumState to_momentum(QuantumState state);
QuantumState to_position(QuantumState state);

/// Split-operator propagator for one iteration of the quantum sawtooth map
///
///     psi -> exp(-i p^2 / 2 hbar) exp(i kick (theta - pi)^2 / 2) psi
///
/// with a fixed kick coefficient. Phase tables are precomputed once; the
/// object may be shared between threads.
class Propagator {
public:
    Propagator(const MapParams& params, double kick);
    ~Propagator();
    Propagator(Propagator&&) noexcept;
    Propagator(const Propagator&) = delete;
    Propagator& operator=(const Propagator&) = delete;
    Propagator& operator=(Propagator&&) = delete;

    std::size_t dimension() const { return kick_phase_.size(); }
    double kick() const { return kick_; }

    /// Advances position-space amplitudes by one map iteration in place.
    void step(ComplexVector& psi) const;

private:
    double kick_;
    ComplexVector kick_phase_;
    ComplexVector free_phase_;  // includes the 1/N of the forward+backward DFT pair
    std::unique_ptr<detail::FftPlan> plan_;
};

/// One map iteration with the given kick coefficient (k0 for H0, k for H).
/// Accepts either representation; always returns position representation.
QuantumState evolve_step(const QuantumState& state, double kick, const MapParams& params);

/// Fidelity amplitude m(t) = <psi_k(t)|psi_k0(t)> for t = 0..T.
std::vector<cplx> fidelity_amplitudes(const QuantumState& state0, const MapParams& params, std::size_t T);

/// Single-state fidelity M(t) = |m(t)|^2, t = 0..T, as the exact column.
FidelitySeries fidelity_series(const QuantumState& state0, const MapParams& params, std::size_t T);

enum class InitialState { PointSource, Gaussian };

struct EnsembleSpec {
    InitialState initial = InitialState::PointSource;
    std::size_t count = 1;
    std::uint64_t seed = 0;
};

/// Initial state of ensemble member `member`; theta0 uniform on [0, 2pi) and,
/// for packets, p0 uniform over the momentum grid, drawn from the member's
/// own stream of (seed, member).
QuantumState ensemble_member_state(const EnsembleSpec& spec, std::size_t member, const MapParams& params);

/// Ensemble-mean fidelity with its standard error of the mean.
///
/// Members run on up to `threads` workers (0 = default worker count) and the
/// mean is reduced in member order, so output is bitwise independent of the
/// thread count.
FidelitySeries ensemble_mean_fidelity(const EnsembleSpec& spec, const MapParams& params, std::size_t T,
                                      unsigned threads = 0);

}  // namespace echolab::qmap
