#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>

#include "echolab/cmap.hpp"

namespace echolab::analysis {

/// pi^4/90: action diffusion constant of the sawtooth kick potential when
/// successive kicks are uncorrelated.
inline constexpr double kUncorrelatedDiffusion = std::numbers::pi * std::numbers::pi * std::numbers::pi *
                                                 std::numbers::pi / 90.0;

/// Which points of a decaying series enter the fit of ln M.
///
/// The window starts at the first t with M(t) < ceiling and runs while
/// floor < M(t) < ceiling. Without an explicit floor it defaults to
/// max(10/N, 5 * plateau), dropping the 10/N term when hilbert_dim is 0.
struct WindowPolicy {
    double ceiling = 0.5;
    std::optional<double> floor;
    std::size_t hilbert_dim = 0;
    std::size_t min_points = 4;
    /// Weight each ln M by (M / err)^2 instead of uniformly.
    bool weighted = false;
};

struct DecayFit {
    double gamma = 0.0;
    double intercept = 0.0;
    std::size_t t_lo = 0;
    std::size_t t_hi = 0;
    std::size_t points = 0;
    double residual_rms = 0.0;
    double r_squared = 0.0;
    double floor = 0.0;
    double ceiling = 0.0;
    double plateau = 0.0;
};

/// Mean over the last 20% of the series (at least one point).
double plateau_estimate(std::span<const double> M);

/// Least-squares line through (t, ln M(t)) on the policy window; gamma = -slope.
/// Throws FitError with the window diagnostics when fewer than
/// policy.min_points points qualify.
DecayFit fit_decay_rate(std::span<const double> M, const WindowPolicy& policy = {},
                        std::span<const double> errors = {});

/// Golden-rule decay rate 2 K_E sigma^2.
double fgr_rate(double sigma, double K_E);

struct GaussianityMetrics {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double excess_kurtosis = 0.0;
    /// Large-sample standard error of the excess kurtosis, sqrt(24/n).
    double kurtosis_stderr = 0.0;
    /// Kolmogorov distance between the empirical CDF and the normal CDF with
    /// the sample mean and variance.
    double sup_distance = 0.0;
};

/// Requires at least 10^4 samples with nonzero variance.
GaussianityMetrics gaussianity_metrics(std::span<const double> samples);
GaussianityMetrics gaussianity_metrics(const cmap::ActionHistogram& hist);

}  // namespace echolab::analysis
