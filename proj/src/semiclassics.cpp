#include "echolab/semiclassics.hpp"

#include <cmath>
#include <numbers>

#include "echolab/cmap.hpp"
#include "echolab/errors.hpp"
#include "echolab/parallel.hpp"
#include "echolab/rng.hpp"

namespace echolab::semiclassics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check(const SemiclassicalConfig& config)
{
    if (config.p0_grid_size == 0)
        throw InputError("semiclassical momentum grid is empty");
    if (config.r0_count == 0)
        throw InputError("semiclassical r0 ensemble is empty");
}

double grid_momentum(std::size_t j, std::size_t size)
{
    return kTwoPi * static_cast<double>(j) / static_cast<double>(size);
}

}  // namespace

double r0_draw(std::uint64_t seed, std::size_t member)
{
    CounterRng rng(seed, member);
    return rng.uniform(0.0, kTwoPi);
}

std::vector<cplx> m_semiclassical_series(double theta0, const MapParams& params, std::size_t t_max,
                                         const SemiclassicalConfig& config)
{
    if (config.p0_grid_size == 0)
        throw InputError("semiclassical momentum grid is empty");
    if (!std::isfinite(theta0))
        throw InputError("initial angle must be finite");

    const double sigma = params.sigma();
    const double K0 = params.K0();
    const std::size_t G = config.p0_grid_size;
    std::vector<cplx> acc(t_max + 1, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < G; ++j) {
        cmap::PhasePoint x = cmap::make_point(theta0, grid_momentum(j, G));
        acc[0] += 1.0;
        for (std::size_t t = 1; t <= t_max; ++t) {
            x = cmap::classical_step(x, K0, true);
            acc[t] += std::polar(1.0, sigma * x.dS);
        }
    }
    for (cplx& a : acc)
        a /= static_cast<double>(G);
    return acc;
}

cplx m_semiclassical(double theta0, const MapParams& params, long t, const SemiclassicalConfig& config)
{
    if (t < 0)
        throw InputError("number of steps must be nonnegative");
    return m_semiclassical_series(theta0, params, static_cast<std::size_t>(t), config).back();
}

FidelitySeries semiclassical_series(const MapParams& params, std::size_t t_max, const SemiclassicalConfig& config,
                                    unsigned threads)
{
    check(config);
    const std::size_t R = config.r0_count;
    const std::size_t rows = t_max + 1;
    std::vector<cplx> m(R * rows);
    parallel_for(R, threads, [&](std::size_t i) {
        const auto mi = m_semiclassical_series(r0_draw(config.seed, i), params, t_max, config);
        std::copy(mi.begin(), mi.end(), m.begin() + static_cast<std::ptrdiff_t>(i * rows));
    });

    FidelitySeries out;
    out.params = params;
    out.ensemble = {"point", R, config.seed, config.p0_grid_size};
    out.Ma.resize(rows);
    out.Msc.resize(rows);
    out.Mf.resize(rows);
    out.Msc_err.resize(rows);
    out.Mf_err.resize(rows);
    const double n = static_cast<double>(R);
    for (std::size_t t = 0; t < rows; ++t) {
        cplx mean = 0.0;
        double sc = 0.0;
        for (std::size_t i = 0; i < R; ++i) {
            mean += m[i * rows + t];
            sc += std::norm(m[i * rows + t]);
        }
        mean /= n;
        sc /= n;
        double ss_sc = 0.0, ss_f = 0.0, mean_f = 0.0;
        for (std::size_t i = 0; i < R; ++i)
            mean_f += std::norm(m[i * rows + t] - mean);
        mean_f /= n;
        for (std::size_t i = 0; i < R; ++i) {
            const double a = std::norm(m[i * rows + t]) - sc;
            const double b = std::norm(m[i * rows + t] - mean) - mean_f;
            ss_sc += a * a;
            ss_f += b * b;
        }
        out.Ma[t] = std::norm(mean);
        out.Msc[t] = sc;
        out.Mf[t] = sc - out.Ma[t];
        out.Msc_err[t] = R > 1 ? std::sqrt(ss_sc / (n - 1.0) / n) : 0.0;
        out.Mf_err[t] = R > 1 ? std::sqrt(ss_f / (n - 1.0) / n) : 0.0;
    }
    return out;
}

double mean_part_Ma(const MapParams& params, long t, const SemiclassicalConfig& config, unsigned threads)
{
    if (t < 0)
        throw InputError("number of steps must be nonnegative");
    return semiclassical_series(params, static_cast<std::size_t>(t), config, threads).Ma.back();
}

double semiclassical_fidelity_Msc(const MapParams& params, long t, const SemiclassicalConfig& config,
                                  unsigned threads)
{
    if (t < 0)
        throw InputError("number of steps must be nonnegative");
    return semiclassical_series(params, static_cast<std::size_t>(t), config, threads).Msc.back();
}

double fluctuating_part_Mf(const MapParams& params, long t, const SemiclassicalConfig& config, unsigned threads)
{
    if (t < 0)
        throw InputError("number of steps must be nonnegative");
    return semiclassical_series(params, static_cast<std::size_t>(t), config, threads).Mf.back();
}

std::vector<double> pooled_actions(const MapParams& params, long t, const SemiclassicalConfig& config,
                                   unsigned threads)
{
    check(config);
    if (t < 0)
        throw InputError("number of steps must be nonnegative");
    const std::size_t G = config.p0_grid_size;
    std::vector<double> out(config.r0_count * G);
    parallel_for(config.r0_count, threads, [&](std::size_t i) {
        const double theta0 = r0_draw(config.seed, i);
        for (std::size_t j = 0; j < G; ++j)
            out[i * G + j] = cmap::accumulate_action(cmap::make_point(theta0, grid_momentum(j, G)), t, params.K0());
    });
    return out;
}

double Ma_from_characteristic(std::span<const double> samples, double sigma)
{
    if (samples.empty())
        throw InputError("characteristic function of an empty sample set");
    cplx s = 0.0;
    for (double x : samples)
        s += std::polar(1.0, sigma * x);
    return std::norm(s / static_cast<double>(samples.size()));
}

}  // namespace echolab::semiclassics
