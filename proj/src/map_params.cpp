#include "echolab/map_params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "echolab/errors.hpp"

namespace echolab {

namespace {

void check_dimension(std::size_t N)
{
    if (N < 2 || N % 2 != 0)
        throw InputError("Hilbert-space dimension must be even and >= 2, got " + std::to_string(N));
}

}  // namespace

MapParams::MapParams(double K0, double epsilon, double sigma, std::size_t N)
    : K0_(K0), epsilon_(epsilon), sigma_(sigma), hbar_(2.0 * std::numbers::pi / static_cast<double>(N)), N_(N)
{
    if (!std::isfinite(K0) || !std::isfinite(epsilon) || !std::isfinite(sigma))
        throw InputError("map parameters must be finite");
}

MapParams MapParams::from_epsilon(double K0, double epsilon, std::size_t N)
{
    check_dimension(N);
    const double hbar = 2.0 * std::numbers::pi / static_cast<double>(N);
    return MapParams(K0, epsilon, epsilon / hbar, N);
}

MapParams MapParams::from_sigma(double K0, double sigma, std::size_t N)
{
    check_dimension(N);
    const double hbar = 2.0 * std::numbers::pi / static_cast<double>(N);
    return MapParams(K0, sigma * hbar, sigma, N);
}

}  // namespace echolab
