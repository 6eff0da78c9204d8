#include "echolab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "echolab/errors.hpp"

namespace echolab::analysis {

double plateau_estimate(std::span<const double> M)
{
    if (M.empty())
        throw InputError("empty series");
    const std::size_t tail = std::max<std::size_t>(1, M.size() / 5);
    double s = 0.0;
    for (std::size_t t = M.size() - tail; t < M.size(); ++t)
        s += M[t];
    return s / static_cast<double>(tail);
}

DecayFit fit_decay_rate(std::span<const double> M, const WindowPolicy& policy, std::span<const double> errors)
{
    if (M.empty())
        throw FitError("cannot fit an empty series");
    if (!errors.empty() && errors.size() != M.size())
        throw InputError("error column length differs from series length");

    DecayFit fit;
    fit.ceiling = policy.ceiling;
    fit.plateau = plateau_estimate(M);
    if (policy.floor) {
        fit.floor = *policy.floor;
    } else {
        fit.floor = 5.0 * fit.plateau;
        if (policy.hilbert_dim > 0)
            fit.floor = std::max(fit.floor, 10.0 / static_cast<double>(policy.hilbert_dim));
    }

    std::size_t lo = 0;
    while (lo < M.size() && !(M[lo] < fit.ceiling))
        ++lo;
    std::size_t hi = lo;
    while (hi < M.size() && M[hi] > fit.floor && M[hi] < fit.ceiling && M[hi] > 0.0)
        ++hi;
    const std::size_t n = hi - lo;
    if (n < policy.min_points || n < 2) {
        std::ostringstream os;
        os << "only " << n << " points in fit window (floor " << fit.floor << ", ceiling " << fit.ceiling
           << ", plateau " << fit.plateau << "); need " << policy.min_points;
        throw FitError(os.str());
    }
    fit.t_lo = lo;
    fit.t_hi = hi - 1;
    fit.points = n;

    std::vector<double> w(n, 1.0);
    if (policy.weighted && !errors.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            const double e = errors[lo + i];
            if (e > 0.0)
                w[i] = (M[lo + i] / e) * (M[lo + i] / e);
        }
    }

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += w[i];
        sx += w[i] * static_cast<double>(lo + i);
        sy += w[i] * std::log(M[lo + i]);
    }
    const double xbar = sx / sw;
    const double ybar = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(lo + i) - xbar;
        const double dy = std::log(M[lo + i]) - ybar;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * dy;
        syy += w[i] * dy * dy;
    }
    const double slope = sxy / sxx;
    fit.gamma = -slope;
    fit.intercept = ybar - slope * xbar;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(M[lo + i]) - (fit.intercept + slope * static_cast<double>(lo + i));
        ss_res += w[i] * r * r;
    }
    fit.residual_rms = std::sqrt(ss_res / sw);
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    if (!std::isfinite(fit.gamma))
        throw FitError("non-finite decay rate");
    return fit;
}

double fgr_rate(double sigma, double K_E) { return 2.0 * K_E * sigma * sigma; }

GaussianityMetrics gaussianity_metrics(std::span<const double> samples)
{
    constexpr std::size_t kMinSamples = 10000;
    if (samples.size() < kMinSamples)
        throw InputError("Gaussianity diagnostics need at least 10^4 samples");

    GaussianityMetrics g;
    g.n = samples.size();
    const double n = static_cast<double>(g.n);
    double s = 0.0;
    for (double x : samples)
        s += x;
    g.mean = s / n;
    double m2 = 0.0, m4 = 0.0;
    for (double x : samples) {
        const double d = x - g.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m4 /= n;
    if (!(m2 > 0.0))
        throw InputError("degenerate sample variance");
    g.variance = m2 * n / (n - 1.0);
    g.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    g.kurtosis_stderr = std::sqrt(24.0 / n);

    std::vector<double> z(samples.begin(), samples.end());
    const double sd = std::sqrt(g.variance);
    for (double& x : z)
        x = (x - g.mean) / sd;
    std::sort(z.begin(), z.end());
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-z[i] / std::numbers::sqrt2);
        d = std::max(d, static_cast<double>(i + 1) / n - cdf);
        d = std::max(d, cdf - static_cast<double>(i) / n);
    }
    g.sup_distance = d;
    return g;
}

GaussianityMetrics gaussianity_metrics(const cmap::ActionHistogram& hist) { return gaussianity_metrics(hist.samples); }

}  // namespace echolab::analysis
