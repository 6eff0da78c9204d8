#include "echolab/cmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "echolab/errors.hpp"
#include "echolab/parallel.hpp"
#include "echolab/rng.hpp"

namespace echolab::cmap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kChunk = 4096;
constexpr long kAlignmentSteps = 64;

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    double excess_kurtosis = 0.0;
};

Moments moments(const std::vector<double>& x)
{
    Moments m;
    const double n = static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x)
        s += v;
    m.mean = s / n;
    double m2 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double d = v - m.mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    m.variance = x.size() > 1 ? m2 * n / (n - 1.0) : 0.0;
    m.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    return m;
}

double quantile(std::vector<double>& x, double q)
{
    const auto k = static_cast<std::size_t>(q * static_cast<double>(x.size() - 1));
    std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), x.end());
    return x[k];
}

}  // namespace

double wrap(double x)
{
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    return r >= kTwoPi ? 0.0 : r;
}

PhasePoint make_point(double theta, double p) { return {wrap(theta), wrap(p), 0.0}; }

double kick_potential(double theta)
{
    const double d = theta - kPi;
    return -0.5 * d * d;
}

double kick_potential_mean() { return -kPi * kPi / 6.0; }

PhasePoint classical_step(PhasePoint point, double K, bool accumulate)
{
    if (accumulate)
        point.dS += kick_potential(point.theta);
    point.p = wrap(point.p + K * (point.theta - kPi));
    point.theta = wrap(point.theta + point.p);
    return point;
}

double accumulate_action(const PhasePoint& start, long t, double K0)
{
    if (t < 0)
        throw InputError("number of steps must be nonnegative");
    PhasePoint x{start.theta, start.p, 0.0};
    for (long s = 0; s < t; ++s)
        x = classical_step(x, K0, true);
    return x.dS;
}

std::vector<double> sample_actions(double K0, long t, std::size_t n_samples, std::uint64_t seed, unsigned threads)
{
    if (n_samples == 0)
        throw InputError("need at least one sample");
    if (t < 0)
        throw InputError("number of steps must be nonnegative");
    std::vector<double> out(n_samples);
    const std::size_t chunks = (n_samples + kChunk - 1) / kChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t end = std::min(n_samples, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            CounterRng rng(seed, i);
            const double theta = rng.uniform(0.0, kTwoPi);
            const double p = rng.uniform(0.0, kTwoPi);
            out[i] = accumulate_action({theta, p, 0.0}, t, K0);
        }
    });
    return out;
}

double ActionHistogram::density(std::size_t i) const
{
    return static_cast<double>(counts[i]) / (static_cast<double>(sample_count) * bin_width(i));
}

ActionHistogram make_histogram(std::vector<double> raw, double centre, const Binning& binning)
{
    if (raw.empty())
        throw InputError("cannot histogram an empty sample set");

    ActionHistogram h;
    const Moments m = moments(raw);
    h.sample_count = raw.size();
    h.centre = centre;
    h.mean = m.mean;
    h.variance = m.variance;
    h.excess_kurtosis = m.excess_kurtosis;
    for (double& v : raw)
        v -= centre;
    h.samples = std::move(raw);

    double lo = 0.0, hi = 0.0;
    std::size_t bins = 0;
    if (binning.rule == Binning::Rule::Fixed) {
        if (binning.bins == 0 || !(binning.hi > binning.lo))
            throw InputError("fixed binning needs bins > 0 and hi > lo");
        lo = binning.lo;
        hi = binning.hi;
        bins = binning.bins;
    } else {
        const auto [mn, mx] = std::minmax_element(h.samples.begin(), h.samples.end());
        const double sd = std::sqrt(m.variance);
        const double c = m.mean - centre;
        lo = std::max(*mn, c - 6.0 * sd);
        hi = std::min(*mx, c + 6.0 * sd);
        std::vector<double> scratch = h.samples;
        const double iqr = quantile(scratch, 0.75) - quantile(scratch, 0.25);
        const double width = 2.0 * iqr / std::cbrt(static_cast<double>(h.sample_count));
        if (!(width > 0.0) || !(hi > lo))
            throw InputError("degenerate sample spread: Freedman-Diaconis bin width is zero");
        bins = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil((hi - lo) / width)), 1, 100000);
    }

    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    h.edges.back() = hi;
    for (std::size_t i = 0; i < bins; ++i)
        if (!(h.edges[i + 1] > h.edges[i]))
            throw InputError("degenerate binning: zero-width bin");

    h.counts.assign(bins, 0);
    const double scale = static_cast<double>(bins) / (hi - lo);
    for (double v : h.samples) {
        const double x = (v - lo) * scale;
        std::size_t b = x <= 0.0 ? 0 : static_cast<std::size_t>(x);
        h.counts[std::min(b, bins - 1)] += 1;
    }
    return h;
}

ActionHistogram sample_action_distribution(double K0, long t, std::size_t n_samples, std::uint64_t seed,
                                           const Binning& binning, unsigned threads)
{
    auto raw = sample_actions(K0, t, n_samples, seed, threads);
    return make_histogram(std::move(raw), kick_potential_mean() * static_cast<double>(t), binning);
}

double lyapunov_analytic(double K0)
{
    if (!(K0 > 0.0))
        throw DomainError("closed-form Lyapunov exponent requires K0 > 0");
    const double a = 2.0 + K0;
    return std::log((a + std::sqrt(a * a - 4.0)) / 2.0);
}

LyapunovEstimate lyapunov_numeric(double K0, long t, std::size_t n_traj, std::uint64_t seed, unsigned threads)
{
    if (t < 100)
        throw InputError("Lyapunov estimate needs at least 100 steps");
    if (n_traj == 0)
        throw InputError("need at least one trajectory");

    std::vector<double> rate(n_traj), det_rate(n_traj);
    parallel_for(n_traj, threads, [&](std::size_t i) {
        CounterRng rng(seed, i);
        PhasePoint x{rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi), 0.0};
        const double phi = rng.uniform(0.0, kTwoPi);
        // tangent basis columns (d theta, d p)
        double u[2] = {std::cos(phi), std::sin(phi)};
        double w[2] = {-std::sin(phi), std::cos(phi)};
        double log1 = 0.0, log2 = 0.0;
        for (long s = -kAlignmentSteps; s < t; ++s) {
            // Jacobian of (theta, p) -> (theta + p + K(theta-pi), p + K(theta-pi)).
            auto apply = [K0](double v[2]) {
                const double dp = v[1] + K0 * v[0];
                v[0] = v[0] + dp;
                v[1] = dp;
            };
            apply(u);
            apply(w);
            x = classical_step(x, K0);
            const double r11 = std::hypot(u[0], u[1]);
            u[0] /= r11;
            u[1] /= r11;
            const double r12 = u[0] * w[0] + u[1] * w[1];
            w[0] -= r12 * u[0];
            w[1] -= r12 * u[1];
            const double r22 = std::hypot(w[0], w[1]);
            w[0] /= r22;
            w[1] /= r22;
            if (s >= 0) {
                log1 += std::log(r11);
                log2 += std::log(r22);
            }
        }
        rate[i] = log1 / static_cast<double>(t);
        det_rate[i] = (log1 + log2) / static_cast<double>(t);
    });

    LyapunovEstimate est;
    const double n = static_cast<double>(n_traj);
    for (std::size_t i = 0; i < n_traj; ++i) {
        est.lambda += rate[i];
        est.log_det_rate += det_rate[i];
    }
    est.lambda /= n;
    est.log_det_rate /= n;
    if (n_traj > 1) {
        double ss = 0.0;
        for (double r : rate)
            ss += (r - est.lambda) * (r - est.lambda);
        est.standard_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return est;
}

Observable kick_observable() { return {kick_potential, kick_potential_mean()}; }

std::vector<double> potential_autocorrelation(double K0, long t_max, std::size_t n_traj, std::uint64_t seed,
                                              const Observable& obs, unsigned threads)
{
    if (t_max < 1)
        throw InputError("autocorrelation needs t_max >= 1");
    if (n_traj == 0)
        throw InputError("need at least one trajectory");
    if (!obs.value)
        throw InputError("observable is empty");

    const auto lags = static_cast<std::size_t>(t_max) + 1;
    const std::size_t length = 2 * lags - 1;
    const std::size_t chunks = (n_traj + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks * lags, 0.0);
    parallel_for(chunks, threads, [&](std::size_t c) {
        std::vector<double> v(length);
        double* acc = partial.data() + c * lags;
        const std::size_t end = std::min(n_traj, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            CounterRng rng(seed, i);
            PhasePoint x{rng.uniform(0.0, kTwoPi), rng.uniform(0.0, kTwoPi), 0.0};
            for (std::size_t s = 0; s < length; ++s) {
                v[s] = obs.value(x.theta) - obs.mean;
                x = classical_step(x, K0);
            }
            for (std::size_t tau = 0; tau < lags; ++tau)
                for (std::size_t origin = 0; origin < lags; ++origin)
                    acc[tau] += v[origin] * v[origin + tau];
        }
    });

    std::vector<double> c(lags, 0.0);
    for (std::size_t k = 0; k < chunks; ++k)
        for (std::size_t tau = 0; tau < lags; ++tau)
            c[tau] += partial[k * lags + tau];
    const double norm = static_cast<double>(n_traj) * static_cast<double>(lags);
    for (double& x : c)
        x /= norm;
    return c;
}

double action_diffusion_constant(double K0, long t_max, std::size_t n_traj, std::uint64_t seed,
                                 const Observable& obs, unsigned threads)
{
    const auto c = potential_autocorrelation(K0, t_max, n_traj, seed, obs, threads);
    double k = 0.5 * c[0];
    for (std::size_t tau = 1; tau < c.size(); ++tau)
        k += c[tau];
    return k;
}

}  // namespace echolab::cmap
