#include "echolab/cli/presets.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "echolab/analysis.hpp"
#include "echolab/cli/csv.hpp"
#include "echolab/cmap.hpp"
#include "echolab/errors.hpp"
#include "echolab/qmap.hpp"
#include "echolab/semiclassics.hpp"

namespace echolab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string tag(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

json params_json(const MapParams& p)
{
    return {{"K0", p.K0()}, {"epsilon", p.epsilon()}, {"sigma", p.sigma()}, {"N", p.N()}, {"hbar", p.hbar()}};
}

json fit_json(const analysis::DecayFit& f)
{
    return {{"gamma", f.gamma}, {"intercept", f.intercept}, {"t_lo", f.t_lo}, {"t_hi", f.t_hi},
            {"points", f.points}, {"residual_rms", f.residual_rms}, {"r_squared", f.r_squared},
            {"floor", f.floor}, {"ceiling", f.ceiling}, {"plateau", f.plateau}};
}

class Runner {
public:
    explicit Runner(const ExperimentConfig& config) : config_(config), out_(config.out_dir)
    {
        std::error_code ec;
        fs::create_directories(out_, ec);
        if (ec || !fs::is_directory(out_))
            throw IoError("cannot create output directory " + out_.string());
    }

    const ExperimentConfig& config() const { return config_; }

    std::size_t dimension(std::size_t paper_value, std::size_t index = 0) const
    {
        if (!config_.N.empty())
            return config_.N[std::min(index, config_.N.size() - 1)];
        return scale_dimension(paper_value, config_.scale);
    }
    std::size_t members(std::size_t paper_value) const
    {
        return config_.members ? *config_.members : scale_count(paper_value, config_.scale);
    }
    std::vector<double> K0_list(std::vector<double> defaults) const
    {
        return config_.K0.empty() ? defaults : config_.K0;
    }
    std::vector<double> sigma_list(std::vector<double> defaults) const
    {
        return config_.sigma.empty() ? defaults : config_.sigma;
    }
    std::uint64_t cell_seed(std::size_t cell) const { return config_.seed + cell; }

    template <typename Writer>
    void write(const std::string& name, Writer&& writer, const std::string& plot_body = {})
    {
        if (!config_.wants("csv"))
            return;
        const fs::path path = out_ / name;
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw IoError("cannot write " + path.string());
        writer(os);
        if (!os)
            throw IoError("write failed for " + path.string());
        files_.push_back(path.string());
        manifest_["outputs"].push_back(name);
        if (config_.plot && !plot_body.empty()) {
            const fs::path gp = out_ / (path.stem().string() + ".gp");
            std::ofstream g(gp);
            if (!g)
                throw IoError("cannot write " + gp.string());
            g << "set datafile separator ','\nset key autotitle columnhead\nset terminal pngcairo\nset output '"
              << path.stem().string() << ".png'\n"
              << plot_body;
            plots_.push_back(gp.string());
        }
    }

    json& manifest() { return manifest_; }

    RunResult finish(const std::string& preset, double seconds)
    {
        manifest_["tool"] = "echo-lab";
        manifest_["version"] = kVersion;
        manifest_["csv_schema_version"] = kCsvSchemaVersion;
        manifest_["preset"] = preset;
        manifest_["config"] = to_json(config_);
        manifest_["wall_time_s"] = seconds;
        if (config_.wants("json")) {
            const fs::path path = out_ / "manifest.json";
            std::ofstream os(path);
            if (!os)
                throw IoError("cannot write " + path.string());
            os << manifest_.dump(2) << '\n';
            files_.push_back(path.string());
        }
        files_.insert(files_.end(), plots_.begin(), plots_.end());
        return {files_, manifest_};
    }

private:
    ExperimentConfig config_;
    fs::path out_;
    json manifest_ = {{"outputs", json::array()}, {"cells", json::array()}};
    std::vector<std::string> files_;
    std::vector<std::string> plots_;
};

const char* kSeriesPlot = "set logscale y\nplot for [c in 'M Ma Msc Mf'] '' using 1:c with lines\n";

void run_fig1(Runner& run)
{
    const auto& cfg = run.config();
    const double K0 = run.K0_list({0.4}).front();
    const double epsilon = cfg.epsilon ? *cfg.epsilon : 0.05 * kTwoPi / 4096.0;
    const std::vector<std::size_t> paper_N{4096, 8192, 16384, 32768};
    std::vector<std::size_t> dims;
    if (!cfg.N.empty())
        dims = cfg.N;
    else
        for (std::size_t n : paper_N)
            dims.push_back(scale_dimension(n, cfg.scale));
    const std::size_t count = run.members(400);

    run.manifest()["paper_defaults"] = {{"K0", 0.4}, {"epsilon", 7.67e-5}, {"N", paper_N}, {"members", 400},
                                        {"initial_state", "point"}};
    std::size_t cell = 0;
    std::size_t last_T = 0;
    for (std::size_t N : dims) {
        const MapParams p = MapParams::from_epsilon(K0, epsilon, N);
        const std::size_t T = cfg.steps ? *cfg.steps
                                        : std::min<std::size_t>(4000, static_cast<std::size_t>(
                                                                          std::ceil(4.0 / (p.sigma() * p.sigma()))));
        last_T = T;
        const qmap::EnsembleSpec spec{qmap::InitialState::PointSource, count, run.cell_seed(cell)};
        const auto series = qmap::ensemble_mean_fidelity(spec, p, T, cfg.threads);
        const std::string name = "fig1_N" + std::to_string(N) + ".csv";
        run.write(name, [&](std::ostream& os) { write_series_csv(os, series); }, kSeriesPlot);
        run.manifest()["cells"].push_back({{"file", name}, {"params", params_json(p)}, {"steps", T},
                                           {"members", count}, {"seed", spec.seed}, {"initial_state", "point"}});
        ++cell;
    }

    const MapParams p = MapParams::from_epsilon(K0, epsilon, dims.back());
    const semiclassics::SemiclassicalConfig sc{cfg.p0_grid ? *cfg.p0_grid : p.N(), count, run.cell_seed(cell)};
    const auto semi = semiclassics::semiclassical_series(p, last_T, sc, cfg.threads);
    const std::string name = "fig1_semiclassical_N" + std::to_string(p.N()) + ".csv";
    run.write(name, [&](std::ostream& os) { write_series_csv(os, semi); }, kSeriesPlot);
    run.manifest()["cells"].push_back({{"file", name}, {"params", params_json(p)}, {"steps", last_T},
                                       {"members", count}, {"seed", sc.seed}, {"p0_grid", sc.p0_grid_size}});
}

void run_fig2(Runner& run)
{
    const auto& cfg = run.config();
    const auto K0s = run.K0_list({0.4, 1.0, 2.0});
    const auto sigmas = run.sigma_list(log_spaced(0.05, 10.0, 40));
    const std::size_t N = run.dimension(131072);
    const std::size_t count = run.members(100);
    run.manifest()["paper_defaults"] = {{"K0", {0.4, 1.0, 2.0}}, {"N", 131072}, {"initial_state", "gaussian"},
                                        {"sigma_grid", "40 log-spaced in [0.05, 10] (not stated in the source)"},
                                        {"members", "100 (not stated in the source)"}};

    std::size_t cell = 0;
    for (double K0 : K0s) {
        const double lambda = cmap::lyapunov_analytic(K0);
        std::vector<std::vector<double>> rows;
        for (double sigma : sigmas) {
            const MapParams p = MapParams::from_sigma(K0, sigma, N);
            const double guess = std::min(analysis::fgr_rate(sigma, analysis::kUncorrelatedDiffusion), lambda);
            const std::size_t T =
                cfg.steps ? *cfg.steps
                          : std::clamp<std::size_t>(
                                static_cast<std::size_t>(std::ceil(1.5 * std::log(static_cast<double>(N)) / guess)),
                                20, 3000);
            const qmap::EnsembleSpec spec{qmap::InitialState::Gaussian, count, run.cell_seed(cell++)};
            const auto series = qmap::ensemble_mean_fidelity(spec, p, T, cfg.threads);
            json entry = {{"params", params_json(p)}, {"steps", T}, {"members", count}, {"seed", spec.seed}};
            analysis::DecayFit fit;
            fit.gamma = std::nan("");
            fit.intercept = std::nan("");
            try {
                analysis::WindowPolicy policy;
                policy.hilbert_dim = N;
                fit = analysis::fit_decay_rate(series.M, policy);
                entry["fit"] = fit_json(fit);
            } catch (const FitError& e) {
                entry["fit_error"] = e.what();
            }
            rows.push_back({sigma, p.epsilon(), fit.gamma, fit.intercept, static_cast<double>(fit.t_lo),
                            static_cast<double>(fit.t_hi), static_cast<double>(fit.points), fit.r_squared,
                            analysis::fgr_rate(sigma, analysis::kUncorrelatedDiffusion), lambda});
            run.manifest()["cells"].push_back(entry);
        }
        const std::string name = "fig2_K0_" + tag(K0) + ".csv";
        run.write(
            name,
            [&](std::ostream& os) {
                write_table_csv(os,
                                {"sigma", "epsilon", "gamma", "intercept", "t_lo", "t_hi", "points", "r_squared",
                                 "fgr_rate", "lyapunov"},
                                rows);
            },
            "set logscale xy\nplot '' using 1:3 with points, '' using 1:9 with lines, '' using 1:10 with lines\n");
    }
}

void run_combined(Runner& run, const char* prefix, double default_K0, std::vector<double> default_sigmas)
{
    const auto& cfg = run.config();
    const double K0 = run.K0_list({default_K0}).front();
    const auto sigmas = run.sigma_list(default_sigmas);
    const std::size_t N = run.dimension(131072);
    const std::size_t count = run.members(500);
    const std::size_t T = cfg.steps ? *cfg.steps : 20;
    run.manifest()["paper_defaults"] = {{"K0", default_K0}, {"sigma", default_sigmas}, {"N", 131072},
                                        {"members", 500}, {"initial_state", "point"}};
    std::size_t cell = 0;
    for (double sigma : sigmas) {
        const MapParams p = MapParams::from_sigma(K0, sigma, N);
        const std::uint64_t seed = run.cell_seed(cell++);
        const qmap::EnsembleSpec spec{qmap::InitialState::PointSource, count, seed};
        auto series = qmap::ensemble_mean_fidelity(spec, p, T, cfg.threads);
        const semiclassics::SemiclassicalConfig sc{cfg.p0_grid ? *cfg.p0_grid : N, count, seed};
        const auto semi = semiclassics::semiclassical_series(p, T, sc, cfg.threads);
        series.Ma = semi.Ma;
        series.Msc = semi.Msc;
        series.Mf = semi.Mf;
        series.Msc_err = semi.Msc_err;
        series.Mf_err = semi.Mf_err;
        series.ensemble.p0_grid = sc.p0_grid_size;

        const std::string name = std::string(prefix) + "_sigma" + tag(sigma) + ".csv";
        run.write(name, [&](std::ostream& os) { write_series_csv(os, series); }, kSeriesPlot);
        json entry = {{"file", name}, {"params", params_json(p)}, {"steps", T}, {"members", count},
                      {"seed", seed}, {"p0_grid", sc.p0_grid_size}, {"lyapunov", cmap::lyapunov_analytic(K0)}};
        analysis::WindowPolicy policy;
        policy.hilbert_dim = N;
        try {
            entry["fit_M"] = fit_json(analysis::fit_decay_rate(series.M, policy));
        } catch (const FitError& e) {
            entry["fit_M_error"] = e.what();
        }
        run.manifest()["cells"].push_back(entry);
    }
}

void run_fig5(Runner& run)
{
    const auto& cfg = run.config();
    const auto K0s = run.K0_list({0.4, 2.0});
    const long t = cfg.steps ? static_cast<long>(*cfg.steps) : 10;
    const std::size_t samples = cfg.samples ? *cfg.samples : scale_count(1000000, cfg.scale, 10000);
    run.manifest()["paper_defaults"] = {{"K0", {0.4, 2.0}}, {"t", 10}, {"samples", 10000000},
                                        {"desk_default_samples", 1000000}};
    std::size_t cell = 0;
    for (double K0 : K0s) {
        const std::uint64_t seed = run.cell_seed(cell++);
        const auto hist = cmap::sample_action_distribution(K0, t, samples, seed, {}, cfg.threads);
        const auto g = analysis::gaussianity_metrics(hist);
        const std::string name = "fig5_K0_" + tag(K0) + ".csv";
        run.write(name, [&](std::ostream& os) { write_histogram_csv(os, hist); },
                  "plot '' using (($1+$2)/2):3 with steps\n");
        run.manifest()["cells"].push_back({{"file", name}, {"K0", K0}, {"t", t}, {"samples", samples},
                                           {"seed", seed}, {"bins", hist.bin_count()}, {"mean", hist.mean},
                                           {"variance", hist.variance}, {"excess_kurtosis", g.excess_kurtosis},
                                           {"sup_distance", g.sup_distance}});
    }
}

}  // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "fig5"};
    return names;
}

RunResult run_preset(const ExperimentConfig& config)
{
    const auto& names = preset_names();
    if (std::find(names.begin(), names.end(), config.preset) == names.end())
        throw InputError("unknown preset '" + config.preset + "' (expected fig1..fig5)");
    if (!(config.scale > 0.0))
        throw InputError("scale must be positive");

    const auto start = std::chrono::steady_clock::now();
    Runner run(config);
    if (config.preset == "fig1")
        run_fig1(run);
    else if (config.preset == "fig2")
        run_fig2(run);
    else if (config.preset == "fig3")
        run_combined(run, "fig3", 2.0, {0.9, 3.0});
    else if (config.preset == "fig4")
        run_combined(run, "fig4", 1.0, {6.0});
    else
        run_fig5(run);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return run.finish(config.preset, elapsed.count());
}

}  // namespace echolab::cli
