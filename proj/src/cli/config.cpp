#include "echolab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "echolab/errors.hpp"

namespace echolab::cli {

using nlohmann::json;

bool ExperimentConfig::wants(const std::string& format) const
{
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

json to_json(const ExperimentConfig& c)
{
    json j;
    j["preset"] = c.preset;
    j["scale"] = c.scale;
    j["seed"] = c.seed;
    j["out_dir"] = c.out_dir;
    j["formats"] = c.formats;
    j["plot"] = c.plot;
    j["K0"] = c.K0;
    j["sigma"] = c.sigma;
    j["N"] = c.N;
    auto opt = [&j](const char* key, const auto& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    opt("epsilon", c.epsilon);
    opt("steps", c.steps);
    opt("members", c.members);
    opt("samples", c.samples);
    opt("p0_grid", c.p0_grid);
    return j;
}

ExperimentConfig config_from_json(const json& in)
{
    const json& j = in.contains("config") && in["config"].is_object() ? in["config"] : in;
    ExperimentConfig c;
    try {
        c.preset = j.value("preset", c.preset);
        c.scale = j.value("scale", c.scale);
        c.seed = j.value("seed", c.seed);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.formats = j.value("formats", c.formats);
        c.plot = j.value("plot", c.plot);
        c.threads = j.value("threads", c.threads);
        c.K0 = j.value("K0", c.K0);
        c.sigma = j.value("sigma", c.sigma);
        c.N = j.value("N", c.N);
        auto opt = [&j](const char* key, auto& target) {
            if (j.contains(key) && !j[key].is_null())
                target = j[key].get<typename std::remove_reference_t<decltype(target)>::value_type>();
        };
        opt("epsilon", c.epsilon);
        opt("steps", c.steps);
        opt("members", c.members);
        opt("samples", c.samples);
        opt("p0_grid", c.p0_grid);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed config: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path);
    try {
        return config_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
        throw InputError("cannot parse config file " + path + ": " + e.what());
    }
}

MapParams derive_params(double K0, double sigma, std::size_t N)
{
    if (N < 2)
        throw InputError("N must be at least 2");
    return MapParams::from_sigma(K0, sigma, N);
}

std::size_t scale_dimension(std::size_t N, double scale, std::size_t min_n)
{
    const double target = std::max(static_cast<double>(min_n), static_cast<double>(N) * scale);
    std::size_t n = 2;
    while (static_cast<double>(n * 2) <= target)
        n *= 2;
    return n;
}

std::size_t scale_count(std::size_t count, double scale, std::size_t floor_count)
{
    const auto v = static_cast<std::size_t>(std::llround(static_cast<double>(count) * scale));
    return std::max(floor_count, v);
}

}  // namespace echolab::cli
