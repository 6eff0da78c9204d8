#include <doctest.h>

#include <cmath>
#include <numbers>

#include "echolab/errors.hpp"
#include "echolab/qmap.hpp"
#include "echolab/rng.hpp"
#include "oracles.hpp"

using namespace echolab;
using namespace echolab::qmap;

namespace {

constexpr double kPi = std::numbers::pi;

QuantumState random_state(std::size_t N, std::uint64_t seed)
{
    CounterRng rng(seed, 0);
    ComplexVector amp(N);
    double norm = 0.0;
    for (auto& a : amp) {
        a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        norm += std::norm(a);
    }
    for (auto& a : amp)
        a /= std::sqrt(norm);
    return QuantumState(std::move(amp), Representation::Position);
}

std::vector<cplx> as_vector(const QuantumState& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

}  // namespace

TEST_CASE("map parameters derive hbar, sigma and k consistently")
{
    const auto p = MapParams::from_epsilon(2.0, 1e-4, 4096);
    CHECK(p.hbar() * 4096 == doctest::Approx(2 * kPi).epsilon(1e-15));
    CHECK(p.sigma() * p.hbar() == doctest::Approx(p.epsilon()).epsilon(1e-15));
    CHECK(p.k() == doctest::Approx(p.k0() + p.sigma()));
    CHECK_THROWS_AS(MapParams::from_sigma(2.0, 0.1, 7), InputError);
    CHECK_THROWS_AS(MapParams::from_sigma(2.0, 0.1, 0), InputError);
}

TEST_CASE("point source is a unit delta on the snapped grid point")
{
    const auto p = MapParams::from_sigma(2.0, 0.0, 8);
    const auto s = make_point_source(0.0, p);
    CHECK(s.representation() == Representation::Position);
    CHECK(s[0] == cplx(1.0, 0.0));
    for (std::size_t j = 1; j < 8; ++j)
        CHECK(s[j] == cplx(0.0, 0.0));
    CHECK(s.norm_squared() == 1.0);

    CHECK(snap_to_grid(2 * kPi / 8 * 3.4, 8) == 3);
    CHECK(snap_to_grid(2 * kPi - 1e-9, 8) == 0);
    CHECK(snap_to_grid(-2 * kPi / 8, 8) == 7);
    CHECK(make_point_source(4.2, p).norm_squared() == 1.0);

    const auto m = to_momentum(s);
    for (std::size_t b = 0; b < 8; ++b)
        CHECK(std::abs(m[b]) == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-14));

    CHECK_THROWS_AS(make_point_source(std::nan(""), p), InputError);
    CHECK_THROWS_AS(make_point_source(INFINITY, p), InputError);
}

TEST_CASE("momentum bins map to symmetric integer quanta")
{
    CHECK(momentum_quantum(0, 8) == 0);
    CHECK(momentum_quantum(3, 8) == 3);
    CHECK(momentum_quantum(4, 8) == -4);
    CHECK(momentum_quantum(7, 8) == -1);
    for (long m = -4; m < 4; ++m)
        CHECK(momentum_quantum(momentum_bin(m, 8), 8) == m);
}

TEST_CASE("gaussian packet: normalization, centring and overlap with a point source")
{
    const auto p = MapParams::from_sigma(2.0, 0.0, 1024);
    CounterRng rng(7, 0);
    for (int i = 0; i < 20; ++i) {
        const double theta0 = rng.uniform(0.0, 2 * kPi);
        const long m0 = static_cast<long>(rng.below(1024)) - 512;
        const auto g = make_gaussian(theta0, p.hbar() * static_cast<double>(m0), p);
        CHECK(std::abs(g.norm_squared() - 1.0) < 1e-12);
        CHECK_FALSE(g.wide_packet_warning());
    }

    const auto g = make_gaussian(kPi, 0.0, p);
    double s = 0.0, c = 0.0;
    for (std::size_t j = 0; j < 1024; ++j) {
        const double w = std::norm(g[j]);
        const double theta = 2 * kPi * j / 1024.0;
        s += w * std::sin(theta);
        c += w * std::cos(theta);
    }
    CHECK(std::abs(std::atan2(s, c)) == doctest::Approx(kPi).epsilon(1e-6));

    // |<delta at theta0 | gaussian at theta0>|^2 equals the largest grid weight.
    for (double theta0 : {0.3, 2.0, 5.9}) {
        const auto packet = make_gaussian(theta0, 3 * p.hbar(), p);
        const auto delta = make_point_source(theta0, p);
        double peak = 0.0;
        for (std::size_t j = 0; j < 1024; ++j)
            peak = std::max(peak, std::norm(packet[j]));
        CHECK(std::norm(inner_product(delta, packet)) == doctest::Approx(peak).epsilon(1e-12));
    }

    const auto small = MapParams::from_sigma(2.0, 0.0, 8);
    CHECK(make_gaussian(1.0, 0.0, small).wide_packet_warning());
    CHECK_THROWS_AS(make_gaussian(1.0, 0.5 * p.hbar(), p), InputError);
    CHECK_THROWS_AS(make_gaussian(1.0, kPi, p), InputError);
}

TEST_CASE("evolve_step: trivial cases and error paths")
{
    const auto p = MapParams::from_sigma(2.0, 0.0, 16);
    ComplexVector amp(16, 0.0);
    amp[0] = 1.0;
    const QuantumState zero_momentum(amp, Representation::Momentum);
    const auto out = to_momentum(evolve_step(zero_momentum, 0.0, p));
    for (std::size_t b = 0; b < 16; ++b)
        CHECK(std::abs(out[b] - amp[b]) < 1e-14);

    const auto wrong = MapParams::from_sigma(2.0, 0.0, 32);
    CHECK_THROWS_AS(evolve_step(zero_momentum, 0.0, wrong), InputError);
    CHECK(evolve_step(zero_momentum, 1.0, p).representation() == Representation::Position);

    const auto big = MapParams::from_sigma(2.0, 0.0, 4096);
    const auto r = evolve_step(random_state(4096, 3), big.k0(), big);
    CHECK(std::abs(r.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("evolve_step matches the dense-matrix oracle")
{
    SUBCASE("N = 8, point source at pi")
    {
        const auto p = MapParams::from_sigma(2.0, 0.0, 8);
        const auto s0 = make_point_source(kPi, p);
        const auto got = evolve_step(s0, p.k0(), p);
        const auto want = oracle::apply(oracle::one_step_matrix(8, p.k0()), as_vector(s0));
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(std::abs(got[j] - want[j]) < 1e-10);
    }
    SUBCASE("random dimensions, kicks and states, several steps")
    {
        CounterRng rng(11, 0);
        for (std::size_t N : {2u, 4u, 6u, 10u, 16u, 32u, 64u}) {
            const double K0 = rng.uniform(0.1, 3.0);
            const auto p = MapParams::from_sigma(K0, rng.uniform(0.0, 5.0), N);
            const auto U = oracle::one_step_matrix(N, p.k());
            auto state = random_state(N, N);
            auto ref = as_vector(state);
            for (int step = 0; step < 5; ++step) {
                state = evolve_step(state, p.k(), p);
                ref = oracle::apply(U, ref);
            }
            double worst = 0.0;
            for (std::size_t j = 0; j < N; ++j)
                worst = std::max(worst, std::abs(state[j] - ref[j]));
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("propagator is unitary over many steps")
{
    const auto p = MapParams::from_sigma(0.4, 1.0, 256);
    Propagator prop(p, p.k());
    auto psi = random_state(256, 5).amplitudes();
    for (int i = 0; i < 1000; ++i)
        prop.step(psi);
    double n = 0.0;
    for (auto a : psi)
        n += std::norm(a);
    CHECK(std::abs(n - 1.0) < 1e-10);
}

TEST_CASE("fidelity series: initial value, epsilon = 0 and bounds")
{
    const auto p0 = MapParams::from_epsilon(2.0, 0.0, 128);
    const auto s = fidelity_series(make_point_source(1.0, p0), p0, 100);
    CHECK(s.M[0] == 1.0);
    for (double m : s.M)
        CHECK(std::abs(m - 1.0) < 1e-10);

    const auto p = MapParams::from_sigma(2.0, 0.9, 128);
    const auto r = fidelity_series(random_state(128, 9), p, 50);
    CHECK(r.M[0] == 1.0);
    for (double m : r.M) {
        CHECK(m >= 0.0);
        CHECK(m <= 1.0 + 1e-10);
    }
}

TEST_CASE("fidelity series matches dense oracle at N = 8")
{
    const auto p = MapParams::from_sigma(2.0, 0.9, 8);
    const auto s0 = make_point_source(kPi, p);
    const auto series = fidelity_series(s0, p, 5);
    const auto U0 = oracle::one_step_matrix(8, p.k0());
    const auto U = oracle::one_step_matrix(8, p.k());
    auto a = as_vector(s0), b = a;
    for (std::size_t t = 1; t <= 5; ++t) {
        a = oracle::apply(U0, a);
        b = oracle::apply(U, b);
        CHECK(std::abs(series.M[t] - std::norm(oracle::overlap(b, a))) < 1e-10);
    }
}

TEST_CASE("fidelity amplitude: swap symmetry and global-phase invariance")
{
    CounterRng rng(21, 0);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t N = 64u << trial;
        const double K0 = rng.uniform(0.2, 2.5);
        const double sigma = rng.uniform(0.1, 4.0);
        const auto p = MapParams::from_sigma(K0, sigma, N);
        // Swapping roles: unperturbed kick k, perturbed kick k0 = k - sigma.
        const auto swapped = MapParams::from_sigma(K0 + p.epsilon(), -sigma, N);
        const auto psi = random_state(N, 100 + trial);
        const auto m = fidelity_amplitudes(psi, p, 20);
        const auto ms = fidelity_amplitudes(psi, swapped, 20);

        auto rotated = psi;
        const cplx phase = std::polar(1.0, rng.uniform(0.0, 2 * kPi));
        for (auto& a : rotated.amplitudes())
            a *= phase;
        const auto mr = fidelity_amplitudes(rotated, p, 20);
        for (std::size_t t = 0; t <= 20; ++t) {
            CHECK(std::abs(std::abs(m[t]) - std::abs(ms[t])) < 1e-12);
            CHECK(std::abs(std::norm(m[t]) - std::norm(mr[t])) < 1e-14);
        }
    }
}

TEST_CASE("ensemble mean fidelity: errors, initial value and thread independence")
{
    const auto p = MapParams::from_sigma(2.0, 0.5, 256);
    CHECK_THROWS_AS(ensemble_mean_fidelity({InitialState::PointSource, 0, 1}, p, 5), InputError);

    for (auto kind : {InitialState::PointSource, InitialState::Gaussian}) {
        const EnsembleSpec spec{kind, 7, 1234};
        const auto one = ensemble_mean_fidelity(spec, p, 30, 1);
        const auto many = ensemble_mean_fidelity(spec, p, 30, 3);
        CHECK(one.M[0] == 1.0);
        CHECK(one.M_err[0] == 0.0);
        CHECK(one.M == many.M);
        CHECK(one.M_err == many.M_err);
        CHECK(one.ensemble.members == 7);
    }

    // Mean equals the member-by-member arithmetic mean.
    const EnsembleSpec spec{InitialState::PointSource, 3, 99};
    const auto mean = ensemble_mean_fidelity(spec, p, 10, 1);
    std::vector<double> manual(11, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto s = fidelity_series(ensemble_member_state(spec, i, p), p, 10);
        for (std::size_t t = 0; t <= 10; ++t)
            manual[t] += s.M[t] / 3.0;
    }
    for (std::size_t t = 0; t <= 10; ++t)
        CHECK(mean.M[t] == doctest::Approx(manual[t]).epsilon(1e-14));
}

TEST_CASE("strong perturbation saturates near 1/N")
{
    const std::size_t N = 4096;
    const auto p = MapParams::from_sigma(1.0, 6.0, N);
    const auto s = ensemble_mean_fidelity({InitialState::PointSource, 40, 3}, p, 40);
    double plateau = 0.0;
    for (std::size_t t = 33; t <= 40; ++t)
        plateau += s.M[t] / 8.0;
    CHECK(plateau < 10.0 / N);
}
