#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace echolab::cmap {

/// Point on the classical torus [0, 2pi)^2 with the action difference (in
/// units of epsilon) accumulated along its unperturbed trajectory.
struct PhasePoint {
    double theta = 0.0;
    double p = 0.0;
    double dS = 0.0;
};

/// Reduces an angle into [0, 2pi).
double wrap(double x);

/// Builds a PhasePoint with both coordinates reduced mod 2pi and dS = 0.
PhasePoint make_point(double theta, double p);

/// First-order perturbation potential per unit epsilon, v = -(theta - pi)^2 / 2.
/// Its phase-space mean is -pi^2/6.
double kick_potential(double theta);

/// Phase-space mean of kick_potential.
double kick_potential_mean();

/// One iteration of the sawtooth map with kick strength K:
///     p' = p + K (theta - pi),  theta' = theta + p'  (mod 2pi).
/// With `accumulate`, dS gains kick_potential(theta) of the angle entering the kick.
PhasePoint classical_step(PhasePoint point, double K, bool accumulate = false);

/// Action difference per unit epsilon after t unperturbed steps from `start`:
/// the sum of kick_potential over the t angles that enter a kick.
double accumulate_action(const PhasePoint& start, long t, double K0);

/// Action differences dS/eps at time t for n uniformly drawn initial points;
/// sample i uses random stream (seed, i).
std::vector<double> sample_actions(double K0, long t, std::size_t n_samples, std::uint64_t seed,
                                   unsigned threads = 0);

struct Binning {
    enum class Rule { FreedmanDiaconis, Fixed };
    Rule rule = Rule::FreedmanDiaconis;
    std::size_t bins = 0;  // Fixed only
    double lo = 0.0;       // Fixed only
    double hi = 0.0;       // Fixed only
};

/// Empirical distribution of (dS - <dS>)/eps.
///
/// `mean`, `variance` and `excess_kurtosis` describe the raw dS/eps samples;
/// `samples` holds the centred values the histogram was built from. Samples
/// outside [edges.front(), edges.back()) are counted in the end bins so that
/// the counts always sum to sample_count.
struct ActionHistogram {
    std::vector<double> edges;
    std::vector<std::size_t> counts;
    std::size_t sample_count = 0;
    double centre = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double excess_kurtosis = 0.0;
    std::vector<double> samples;

    std::size_t bin_count() const { return counts.size(); }
    double bin_width(std::size_t i) const { return edges[i + 1] - edges[i]; }
    /// count / (sample_count * width); integrates to one.
    double density(std::size_t i) const;
};

/// Bins raw dS/eps samples after subtracting `centre`.
ActionHistogram make_histogram(std::vector<double> raw, double centre, const Binning& binning = {});

/// Histogram of (dS - <dS>)/eps at time t with <dS>/eps = -pi^2 t / 6.
ActionHistogram sample_action_distribution(double K0, long t, std::size_t n_samples, std::uint64_t seed,
                                           const Binning& binning = {}, unsigned threads = 0);

/// ln((2 + K0 + sqrt((2 + K0)^2 - 4)) / 2), the largest eigenvalue log of the
/// constant tangent map. Requires K0 > 0.
double lyapunov_analytic(double K0);

struct LyapunovEstimate {
    double lambda = 0.0;
    double standard_error = 0.0;
    /// Mean of (sum of both log stretches)/t; zero for an area-preserving map.
    double log_det_rate = 0.0;
};

/// Benettin estimate of the largest Lyapunov exponent: tangent basis iterated
/// along `n_traj` random orbits with Gram-Schmidt renormalization every step,
/// after a short alignment transient. Requires t >= 100.
LyapunovEstimate lyapunov_numeric(double K0, long t, std::size_t n_traj, std::uint64_t seed, unsigned threads = 0);

/// Scalar function of the angle and its phase-space mean.
struct Observable {
    std::function<double(double)> value;
    double mean = 0.0;
};

/// The kick potential as an Observable.
Observable kick_observable();

/// Centred autocorrelation C(tau) = <v~(theta_tau) v~(theta_0)>, tau = 0..t_max,
/// averaged over n_traj stationary orbits and t_max + 1 time origins each.
std::vector<double> potential_autocorrelation(double K0, long t_max, std::size_t n_traj, std::uint64_t seed,
                                              const Observable& obs = kick_observable(), unsigned threads = 0);

/// Discrete action diffusion constant C(0)/2 + sum_{tau=1}^{t_max} C(tau).
double action_diffusion_constant(double K0, long t_max = 20, std::size_t n_traj = 100000, std::uint64_t seed = 1,
                                 const Observable& obs = kick_observable(), unsigned threads = 0);

}  // namespace echolab::cmap
