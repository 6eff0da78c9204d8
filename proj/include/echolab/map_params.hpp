#pragma once

#include <cstddef>

namespace echolab {

/// Parameters of the kicked sawtooth map pair (unperturbed K0, perturbed K0 + epsilon)
/// on an N-dimensional torus Hilbert space.
///
/// hbar = 2*pi/N, k0 = K0/hbar, sigma = epsilon/hbar, k = k0 + sigma.
/// epsilon << K0 is a usage contract and is not checked.
class MapParams {
public:
    MapParams() = default;

    /// Build from the classical perturbation epsilon. N must be even and >= 2.
    static MapParams from_epsilon(double K0, double epsilon, std::size_t N);
    /// Build from the quantum perturbation strength sigma = epsilon/hbar.
    static MapParams from_sigma(double K0, double sigma, std::size_t N);

    double K0() const { return K0_; }
    double epsilon() const { return epsilon_; }
    std::size_t N() const { return N_; }

    double hbar() const { return hbar_; }
    double sigma() const { return sigma_; }
    double k0() const { return K0_ / hbar_; }
    double k() const { return k0() + sigma_; }
    /// Classical kick strength of the perturbed map.
    double K() const { return K0_ + epsilon_; }

private:
    MapParams(double K0, double epsilon, double sigma, std::size_t N);

    double K0_ = 0.0;
    double epsilon_ = 0.0;
    double sigma_ = 0.0;
    double hbar_ = 0.0;
    std::size_t N_ = 0;
};

}  // namespace echolab
