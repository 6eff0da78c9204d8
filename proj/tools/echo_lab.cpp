// echo-lab: fidelity-decay experiments for the quantum sawtooth map.
//
//   echo-lab run --preset fig2 --scale 0.25 --out DIR --seed 42 --format csv,json
//   echo-lab params --K0 2 --sigma 0.9 --N 131072

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "echolab/cli/config.hpp"
#include "echolab/cli/presets.hpp"
#include "echolab/cmap.hpp"
#include "echolab/errors.hpp"

using namespace echolab;

namespace {

std::vector<std::string> split_formats(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Loschmidt-echo experiments on the kicked sawtooth map"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cli::kVersion));

    auto* run = app.add_subcommand("run", "Run a figure preset and write CSV + manifest");
    std::string config_path, preset, out_dir, formats;
    double scale = 1.0;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    bool plot = false;
    std::vector<double> K0s, sigmas;
    std::vector<std::size_t> dims;
    double epsilon = 0.0;
    std::size_t steps = 0, members = 0, samples = 0, p0_grid = 0;
    run->add_option("--config", config_path, "JSON config or a previous run's manifest.json");
    auto* o_preset = run->add_option("--preset", preset, "fig1|fig2|fig3|fig4|fig5");
    auto* o_scale = run->add_option("--scale", scale, "Multiply N and ensemble sizes by this factor (1 = full size)");
    auto* o_out = run->add_option("--out", out_dir, "Output directory");
    auto* o_seed = run->add_option("--seed", seed, "Base seed");
    auto* o_format = run->add_option("--format", formats, "Comma list of csv,json");
    auto* o_threads = run->add_option("--threads", threads, "Worker threads (default: $ECHOLAB_THREADS or all cores)");
    auto* o_plot = run->add_flag("--plot", plot, "Also write gnuplot scripts");
    auto* o_K0 = run->add_option("--K0", K0s, "Override kick strengths")->delimiter(',');
    auto* o_sigma = run->add_option("--sigma", sigmas, "Override perturbation strengths")->delimiter(',');
    auto* o_N = run->add_option("--N", dims, "Override Hilbert-space dimensions")->delimiter(',');
    auto* o_eps = run->add_option("--epsilon", epsilon, "Override epsilon (fig1)");
    auto* o_steps = run->add_option("--steps", steps, "Override number of map steps");
    auto* o_members = run->add_option("--members", members, "Override ensemble size");
    auto* o_samples = run->add_option("--samples", samples, "Override classical sample count (fig5)");
    auto* o_grid = run->add_option("--p0-grid", p0_grid, "Override semiclassical momentum grid");

    auto* params = app.add_subcommand("params", "Print derived map parameters");
    double pK0 = 2.0, psigma = 0.0;
    std::size_t pN = 4096;
    params->add_option("--K0", pK0)->required();
    params->add_option("--sigma", psigma)->required();
    params->add_option("--N", pN)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*params) {
            const auto p = cli::derive_params(pK0, psigma, pN);
            std::printf("K0=%.17g sigma=%.17g N=%zu\nhbar=%.17g epsilon=%.17g k0=%.17g k=%.17g lambda=%.17g\n", p.K0(),
                        p.sigma(), p.N(), p.hbar(), p.epsilon(), p.k0(), p.k(),
                        p.K0() > 0 ? cmap::lyapunov_analytic(p.K0()) : 0.0);
            return 0;
        }

        cli::ExperimentConfig cfg = config_path.empty() ? cli::ExperimentConfig{} : cli::load_config(config_path);
        if (*o_preset) cfg.preset = preset;
        if (*o_scale) cfg.scale = scale;
        if (*o_out) cfg.out_dir = out_dir;
        if (*o_seed) cfg.seed = seed;
        if (*o_format) cfg.formats = split_formats(formats);
        if (*o_threads) cfg.threads = threads;
        if (*o_plot) cfg.plot = plot;
        if (*o_K0) cfg.K0 = K0s;
        if (*o_sigma) cfg.sigma = sigmas;
        if (*o_N) cfg.N = dims;
        if (*o_eps) cfg.epsilon = epsilon;
        if (*o_steps) cfg.steps = steps;
        if (*o_members) cfg.members = members;
        if (*o_samples) cfg.samples = samples;
        if (*o_grid) cfg.p0_grid = p0_grid;
        if (cfg.preset.empty()) {
            std::cerr << "error: no preset given (use --preset or a config file)\n";
            return 2;
        }

        const auto result = cli::run_preset(cfg);
        for (const auto& f : result.files)
            std::cout << f << '\n';
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
