#include <doctest.h>

#include <cmath>
#include <numbers>

#include "echolab/analysis.hpp"
#include "echolab/cmap.hpp"
#include "echolab/errors.hpp"
#include "echolab/rng.hpp"

using namespace echolab;
using namespace echolab::analysis;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> gaussian_samples(std::size_t n, std::uint64_t seed)
{
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng rng(seed, i);
        const double u1 = 1.0 - rng.uniform(), u2 = rng.uniform();
        g[i] = std::sqrt(-2 * std::log(u1)) * std::cos(2 * kPi * u2);
    }
    return g;
}

}  // namespace

TEST_CASE("fit recovers an exact exponential and a flat line")
{
    std::vector<double> m(41);
    for (std::size_t t = 0; t < m.size(); ++t)
        m[t] = std::exp(-0.5 * double(t));
    const auto fit = fit_decay_rate(m);
    CHECK(std::abs(fit.gamma - 0.5) < 1e-9);
    CHECK(fit.t_lo == 2);
    CHECK(fit.r_squared == doctest::Approx(1.0));

    std::vector<double> flat(30, 0.3);
    WindowPolicy policy;
    policy.floor = 0.0;
    CHECK(std::abs(fit_decay_rate(flat, policy).gamma) < 1e-9);
}

TEST_CASE("fit window follows the policy")
{
    std::vector<double> m(100);
    for (std::size_t t = 0; t < m.size(); ++t)
        m[t] = std::exp(-0.2 * double(t)) + 1e-4;
    WindowPolicy policy;
    policy.hilbert_dim = 1024;  // floor = max(10/1024, 5 * plateau)
    const auto fit = fit_decay_rate(m, policy);
    CHECK(fit.floor == doctest::Approx(10.0 / 1024));
    CHECK(m[fit.t_lo] < 0.5);
    CHECK(m[fit.t_lo - 1] >= 0.5);
    CHECK(m[fit.t_hi] > fit.floor);
    CHECK(m[fit.t_hi + 1] <= fit.floor);
    CHECK(plateau_estimate(m) == doctest::Approx(1e-4).epsilon(1e-3));
}

TEST_CASE("fit needs four usable points")
{
    const std::vector<double> m{1.0, 0.4, 0.1, 1e-9, 1e-9, 1e-9};
    WindowPolicy policy;
    policy.floor = 1e-3;
    CHECK_THROWS_AS(fit_decay_rate(m, policy), FitError);
    CHECK_THROWS_AS(fit_decay_rate(std::vector<double>{}), FitError);
}

TEST_CASE("fit is invariant under a positive rescaling of the series")
{
    CounterRng rng(9, 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> m(60);
        const double rate = rng.uniform(0.05, 0.5);
        for (std::size_t t = 0; t < m.size(); ++t)
            m[t] = 0.45 * std::exp(-rate * double(t)) * (1.0 + 0.05 * rng.uniform(-1.0, 1.0));
        WindowPolicy policy;
        policy.floor = 0.0;
        policy.ceiling = 1e9;
        const double c = rng.uniform(0.1, 10.0);
        std::vector<double> scaled(m);
        for (double& x : scaled)
            x *= c;
        const auto a = fit_decay_rate(m, policy), b = fit_decay_rate(scaled, policy);
        CHECK(std::abs(a.gamma - b.gamma) < 1e-12);
        CHECK(b.intercept - a.intercept == doctest::Approx(std::log(c)).epsilon(1e-10));
    }
}

TEST_CASE("weighted fit uses the error column")
{
    std::vector<double> m(30), err(30);
    for (std::size_t t = 0; t < m.size(); ++t) {
        m[t] = 0.4 * std::exp(-0.3 * double(t));
        err[t] = 0.01 * m[t];
    }
    m[10] *= 3.0;    // outlier with a huge error bar
    err[10] = 100.0;
    WindowPolicy policy;
    policy.floor = 1e-12;
    policy.weighted = true;
    CHECK(fit_decay_rate(m, policy, err).gamma == doctest::Approx(0.3).epsilon(1e-3));
    policy.weighted = false;
    CHECK(std::abs(fit_decay_rate(m, policy, err).gamma - 0.3) > 1e-3);
}

TEST_CASE("golden-rule rate")
{
    CHECK(fgr_rate(0.0, kUncorrelatedDiffusion) == 0.0);
    CHECK(fgr_rate(1.0, kUncorrelatedDiffusion) == doctest::Approx(2.165).epsilon(5e-4));
    CHECK(fgr_rate(0.4, kUncorrelatedDiffusion) == doctest::Approx(0.3464).epsilon(1e-4));
    CHECK(kUncorrelatedDiffusion == doctest::Approx(1.0823).epsilon(1e-4));
    for (double s : {0.01, 0.3, 2.0, 7.5})
        CHECK(fgr_rate(2 * s, 1.3) == doctest::Approx(4 * fgr_rate(s, 1.3)).epsilon(1e-15));
}

TEST_CASE("Gaussianity metrics: Gaussian and uniform references")
{
    const auto g = gaussianity_metrics(gaussian_samples(200000, 1));
    CHECK(std::abs(g.excess_kurtosis) < 3 * g.kurtosis_stderr);
    CHECK(g.sup_distance < 0.005);

    std::vector<double> u(200000);
    for (std::size_t i = 0; i < u.size(); ++i) {
        CounterRng rng(2, i);
        u[i] = rng.uniform();
    }
    const auto gu = gaussianity_metrics(u);
    CHECK(gu.excess_kurtosis == doctest::Approx(-1.2).epsilon(3 * gu.kurtosis_stderr / 1.2));

    CHECK_THROWS_AS(gaussianity_metrics(std::vector<double>(100, 1.0)), InputError);
    CHECK_THROWS_AS(gaussianity_metrics(std::vector<double>(20000, 1.0)), InputError);
}

TEST_CASE("Gaussianity metrics are invariant under affine rescaling")
{
    auto x = gaussian_samples(20000, 3);
    for (double& v : x)
        v = v * v * v + v;  // something non-Gaussian
    const auto a = gaussianity_metrics(x);
    for (double& v : x)
        v = 3.7 * v - 12.0;
    const auto b = gaussianity_metrics(x);
    CHECK(std::abs(a.excess_kurtosis - b.excess_kurtosis) < 1e-12);
    CHECK(std::abs(a.sup_distance - b.sup_distance) < 1e-12);
}

TEST_CASE("weak chaos gives a much less Gaussian action distribution")
{
    const auto weak = gaussianity_metrics(cmap::sample_action_distribution(0.4, 10, 100000, 1));
    const auto strong = gaussianity_metrics(cmap::sample_action_distribution(2.0, 10, 100000, 2));
    MESSAGE("sup-distance K0=0.4: " << weak.sup_distance << ", K0=2: " << strong.sup_distance);
    CHECK(weak.excess_kurtosis > 0.1);
    CHECK(weak.sup_distance > 5 * strong.sup_distance);
}
