#include "echolab/qmap.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "echolab/errors.hpp"
#include "echolab/parallel.hpp"
#include "echolab/rng.hpp"
#include "fft.hpp"

namespace echolab {

double QuantumState::norm_squared() const
{
    double s = 0.0;
    for (const cplx& a : amplitudes_)
        s += std::norm(a);
    return s;
}

cplx inner_product(const QuantumState& a, const QuantumState& b)
{
    if (a.dimension() != b.dimension())
        throw InputError("inner product of states with different dimensions");
    if (a.representation() != b.representation())
        throw InputError("inner product of states in different representations");
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.dimension(); ++j)
        s += std::conj(a[j]) * b[j];
    return s;
}

namespace qmap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dimension(const QuantumState& state, const MapParams& params)
{
    if (state.dimension() != params.N())
        throw InputError("state dimension " + std::to_string(state.dimension()) +
                         " does not match N = " + std::to_string(params.N()));
}

double wrap_angle(double theta)
{
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0)
        r += kTwoPi;
    return r >= kTwoPi ? 0.0 : r;
}

// theta_j - pi on the position grid; j = 0 sits on the left branch at -pi.
double centred_angle(std::size_t j, std::size_t N)
{
    return kTwoPi / static_cast<double>(N) * (static_cast<double>(j) - static_cast<double>(N / 2));
}

cplx overlap(const ComplexVector& bra, const ComplexVector& ket)
{
    cplx s = 0.0;
    for (std::size_t j = 0; j < bra.size(); ++j)
        s += std::conj(bra[j]) * ket[j];
    return s;
}

void transform(QuantumState& state, bool forward)
{
    const std::size_t N = state.dimension();
    detail::FftPlan plan(N);
    auto& amp = state.amplitudes();
    if (forward)
        plan.forward(amp.data());
    else
        plan.backward(amp.data());
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (cplx& a : amp)
        a *= scale;
}

}  // namespace

std::size_t snap_to_grid(double theta0, std::size_t N)
{
    if (!std::isfinite(theta0))
        throw InputError("initial angle must be finite");
    const double x = wrap_angle(theta0) / kTwoPi * static_cast<double>(N);
    return static_cast<std::size_t>(std::llround(x)) % N;
}

QuantumState make_point_source(double theta0, const MapParams& params)
{
    const std::size_t N = params.N();
    ComplexVector amp(N, cplx{0.0, 0.0});
    amp[snap_to_grid(theta0, N)] = 1.0;
    return QuantumState(std::move(amp), Representation::Position);
}

QuantumState make_gaussian(double theta0, double p0, const MapParams& params)
{
    if (!std::isfinite(theta0) || !std::isfinite(p0))
        throw InputError("packet centre must be finite");
    const std::size_t N = params.N();
    const double hbar = params.hbar();
    const double mq = std::round(p0 / hbar);
    if (std::abs(p0 / hbar - mq) > 1e-6)
        throw InputError("packet momentum must lie on the grid p = hbar*m");
    const long m0 = static_cast<long>(mq);
    if (m0 < -static_cast<long>(N / 2) || m0 >= static_cast<long>(N / 2))
        throw InputError("packet momentum outside [-pi, pi)");

    const double centre = wrap_angle(theta0);
    constexpr int kImages = 3;
    ComplexVector amp(N);
    double central_peak = 0.0;
    double image_peak = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(N);
        double d = std::remainder(theta - centre, kTwoPi);  // [-pi, pi]
        double central = std::exp(-d * d / (2.0 * hbar));
        double images = 0.0;
        for (int n = 1; n <= kImages; ++n) {
            const double dp = d + kTwoPi * n;
            const double dm = d - kTwoPi * n;
            images += std::exp(-dp * dp / (2.0 * hbar)) + std::exp(-dm * dm / (2.0 * hbar));
        }
        central_peak = std::max(central_peak, central);
        image_peak = std::max(image_peak, images);
        const double phase = std::fmod(static_cast<double>(m0) * theta, kTwoPi);
        amp[j] = (central + images) * std::polar(1.0, phase);
    }

    QuantumState state(std::move(amp), Representation::Position);
    const double norm = std::sqrt(state.norm_squared());
    for (cplx& a : state.amplitudes())
        a /= norm;
    state.set_periodization_overlap(central_peak > 0.0 ? image_peak / central_peak : 1.0);
    return state;
}

QuantumState to_momentum(QuantumState state)
{
    if (state.representation() == Representation::Momentum)
        return state;
    transform(state, true);
    state.set_representation(Representation::Momentum);
    return state;
}

QuantumState to_position(QuantumState state)
{
    if (state.representation() == Representation::Position)
        return state;
    transform(state, false);
    state.set_representation(Representation::Position);
    return state;
}

Propagator::Propagator(const MapParams& params, double kick)
    : kick_(kick), kick_phase_(params.N()), free_phase_(params.N()),
      plan_(std::make_unique<detail::FftPlan>(params.N()))
{
    if (!std::isfinite(kick))
        throw InputError("kick coefficient must be finite");
    const std::size_t N = params.N();
    const double inv_n = 1.0 / static_cast<double>(N);
    const auto two_n = static_cast<long long>(2 * N);
    for (std::size_t j = 0; j < N; ++j) {
        const double d = centred_angle(j, N);
        kick_phase_[j] = std::polar(1.0, std::fmod(0.5 * kick * d * d, kTwoPi));
        // hbar m^2 / 2 = pi m^2 / N, reduced exactly modulo 2 pi in integers.
        const long long m = momentum_quantum(j, N);
        const long long r = (m * m) % two_n;
        free_phase_[j] = std::polar(inv_n, -std::numbers::pi * static_cast<double>(r) * inv_n);
    }
}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;

void Propagator::step(ComplexVector& psi) const
{
    if (psi.size() != dimension())
        throw InputError("state dimension does not match propagator");
    const std::size_t N = dimension();
    for (std::size_t j = 0; j < N; ++j)
        psi[j] *= kick_phase_[j];
    plan_->forward(psi.data());
    for (std::size_t b = 0; b < N; ++b)
        psi[b] *= free_phase_[b];
    plan_->backward(psi.data());
}

QuantumState evolve_step(const QuantumState& state, double kick, const MapParams& params)
{
    require_dimension(state, params);
    QuantumState out = to_position(state);
    Propagator(params, kick).step(out.amplitudes());
    return out;
}

std::vector<cplx> fidelity_amplitudes(const QuantumState& state0, const MapParams& params, std::size_t T)
{
    require_dimension(state0, params);
    const QuantumState start = to_position(state0);
    const double norm0 = start.norm_squared();
    if (!(norm0 > 0.0))
        throw InputError("initial state has zero norm");

    const Propagator unperturbed(params, params.k0());
    const Propagator perturbed(params, params.k());
    ComplexVector a = start.amplitudes();
    ComplexVector b = start.amplitudes();

    std::vector<cplx> m(T + 1);
    m[0] = 1.0;
    for (std::size_t t = 1; t <= T; ++t) {
        unperturbed.step(a);
        perturbed.step(b);
        m[t] = overlap(b, a) / norm0;
    }
    return m;
}

FidelitySeries fidelity_series(const QuantumState& state0, const MapParams& params, std::size_t T)
{
    FidelitySeries out;
    out.params = params;
    out.ensemble = {"single", 1, 0, 0};
    const auto m = fidelity_amplitudes(state0, params, T);
    out.M.resize(T + 1);
    out.M_err.assign(T + 1, 0.0);
    for (std::size_t t = 0; t <= T; ++t)
        out.M[t] = std::norm(m[t]);
    out.M[0] = 1.0;
    return out;
}

QuantumState ensemble_member_state(const EnsembleSpec& spec, std::size_t member, const MapParams& params)
{
    CounterRng rng(spec.seed, member);
    const double theta0 = rng.uniform(0.0, kTwoPi);
    if (spec.initial == InitialState::PointSource)
        return make_point_source(theta0, params);
    const std::size_t N = params.N();
    const long m0 = static_cast<long>(rng.below(N)) - static_cast<long>(N / 2);
    return make_gaussian(theta0, params.hbar() * static_cast<double>(m0), params);
}

FidelitySeries ensemble_mean_fidelity(const EnsembleSpec& spec, const MapParams& params, std::size_t T,
                                      unsigned threads)
{
    if (spec.count == 0)
        throw InputError("ensemble must contain at least one member");

    const std::size_t rows = T + 1;
    std::vector<double> per_member(spec.count * rows);
    parallel_for(spec.count, threads, [&](std::size_t i) {
        const auto m = fidelity_amplitudes(ensemble_member_state(spec, i, params), params, T);
        for (std::size_t t = 0; t < rows; ++t)
            per_member[i * rows + t] = std::norm(m[t]);
    });

    FidelitySeries out;
    out.params = params;
    out.ensemble = {spec.initial == InitialState::PointSource ? "point" : "gaussian", spec.count, spec.seed, 0};
    out.M.assign(rows, 0.0);
    out.M_err.assign(rows, 0.0);
    const double n = static_cast<double>(spec.count);
    for (std::size_t t = 0; t < rows; ++t) {
        double sum = 0.0;
        for (std::size_t i = 0; i < spec.count; ++i)
            sum += per_member[i * rows + t];
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t i = 0; i < spec.count; ++i) {
            const double d = per_member[i * rows + t] - mean;
            ss += d * d;
        }
        out.M[t] = mean;
        out.M_err[t] = spec.count > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    }
    out.M[0] = 1.0;
    out.M_err[0] = 0.0;
    return out;
}

}  // namespace qmap
}  // namespace echolab
