#include "aonpg/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace aonpg {

namespace {

std::map<std::string, std::string> const& defaults()
{
    static std::map<std::string, std::string> const d{
        {"game.alpha", "0.3"},
        {"game.m", "4"},
        {"game.eps_stop", "1e-4"},
        {"game.T", "10000000"},
        {"graph.kind", "rgg"},
        {"graph.n", "50"},
        {"graph.r_g", "0.3"},
        {"graph.l", "2"},
        {"graph.path", ""},
        {"graph.max_attempts", "1000000"},
        {"batch.n_runs", "500"},
        {"batch.master_seed", "0"},
        {"batch.parallelism", "1"},
        {"batch.record_stride", "0"},
        {"batch.fresh_graph", "true"},
        {"output.directory", ""},
    };
    return d;
}

std::string trim(std::string const& s)
{
    auto first = std::find_if_not(s.begin(), s.end(),
                                  [](unsigned char c) { return std::isspace(c); });
    auto last = std::find_if_not(s.rbegin(), s.rend(),
                                 [](unsigned char c) { return std::isspace(c); })
                    .base();
    return first < last ? std::string(first, last) : std::string();
}

double real_field(ExperimentConfig const& c, std::string const& key)
{
    auto const& s = c.get(key);
    try
    {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size() && std::isfinite(v))
            return v;
    }
    catch (std::exception const&)
    {
    }
    throw ConfigError(key + ": expected a real number, got '" + s + "'");
}

std::uint64_t count_field(ExperimentConfig const& c, std::string const& key)
{
    auto const& s = c.get(key);
    if (!s.empty() && s.front() != '-')
    {
        try
        {
            std::size_t used = 0;
            auto v = std::stoull(s, &used);
            if (used == s.size())
                return v;
        }
        catch (std::exception const&)
        {
        }
        // Accept integral reals such as 1e7.
        try
        {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used == s.size() && v >= 0 && v < 1.8e19 && std::floor(v) == v)
                return static_cast<std::uint64_t>(v);
        }
        catch (std::exception const&)
        {
        }
    }
    throw ConfigError(key + ": expected a nonnegative integer, got '" + s
                      + "'");
}

bool bool_field(ExperimentConfig const& c, std::string const& key)
{
    auto const& s = c.get(key);
    if (s == "true" || s == "1" || s == "yes")
        return true;
    if (s == "false" || s == "0" || s == "no")
        return false;
    throw ConfigError(key + ": expected true or false, got '" + s + "'");
}

}  // namespace

ExperimentConfig::ExperimentConfig() : values_(defaults()) {}

void ExperimentConfig::set(std::string const& key, std::string value)
{
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("unknown configuration key '" + key + "'");
    it->second = std::move(value);
}

std::string const& ExperimentConfig::get(std::string const& key) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("unknown configuration key '" + key + "'");
    return it->second;
}

ExperimentConfig ExperimentConfig::parse(std::istream& in)
{
    ExperimentConfig cfg;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto body = trim(line.substr(0, line.find('#')));
        if (body.empty())
            continue;
        auto where = "line " + std::to_string(lineno) + ": ";
        if (body.front() == '[')
        {
            if (body.back() != ']')
                throw ConfigError(where + "unterminated section header");
            section = trim(body.substr(1, body.size() - 2));
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + "expected 'key = value'");
        if (section.empty())
            throw ConfigError(where + "key outside of a section");
        auto key = section + "." + trim(body.substr(0, eq));
        try
        {
            cfg.set(key, trim(body.substr(eq + 1)));
        }
        catch (ConfigError const& e)
        {
            throw ConfigError(where + e.what());
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse(in);
}

BatchSpec ExperimentConfig::batch_spec() const
{
    BatchSpec spec;

    double const alpha = real_field(*this, "game.alpha");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("game.alpha: must lie in (0, 1)");
    spec.cfg.alpha = LearningRate{alpha};
    spec.cfg.payoff_exponent = real_field(*this, "game.m");
    if (!(spec.cfg.payoff_exponent > 0.0))
        throw ConfigError("game.m: must be positive");
    spec.cfg.eps_stop = real_field(*this, "game.eps_stop");
    if (!(spec.cfg.eps_stop > 0.0 && spec.cfg.eps_stop < 0.5))
        throw ConfigError("game.eps_stop: must lie in (0, 0.5)");
    spec.cfg.max_rounds = count_field(*this, "game.T");
    if (spec.cfg.max_rounds < 1)
        throw ConfigError("game.T: must be at least 1");

    auto const& kind = get("graph.kind");
    if (kind == "rgg")
        spec.graph.kind = GraphKind::RandomGeometric;
    else if (kind == "circulant")
        spec.graph.kind = GraphKind::Circulant;
    else if (kind == "file")
        spec.graph.kind = GraphKind::File;
    else
        throw ConfigError("graph.kind: expected rgg, circulant or file, got '"
                          + kind + "'");
    spec.graph.n = count_field(*this, "graph.n");
    if (spec.graph.n < 1)
        throw ConfigError("graph.n: must be at least 1");
    spec.graph.radius = real_field(*this, "graph.r_g");
    if (!(spec.graph.radius > 0.0 && spec.graph.radius < 1.0))
        throw ConfigError("graph.r_g: must lie in (0, 1)");
    spec.graph.l = count_field(*this, "graph.l");
    if (spec.graph.l % 2 != 0)
        throw ConfigError("graph.l: l must be even, got "
                          + std::to_string(spec.graph.l));
    if (spec.graph.l < 2)
        throw ConfigError("graph.l: must be at least 2");
    if (spec.graph.kind == GraphKind::Circulant && spec.graph.l + 1 > spec.graph.n)
        throw ConfigError("graph.l: must not exceed n - 1");
    spec.graph.path = get("graph.path");
    if (spec.graph.kind == GraphKind::File && spec.graph.path.empty())
        throw ConfigError("graph.path: required when graph.kind = file");
    spec.graph.max_attempts = count_field(*this, "graph.max_attempts");
    if (spec.graph.max_attempts < 1)
        throw ConfigError("graph.max_attempts: must be at least 1");

    spec.n_runs = count_field(*this, "batch.n_runs");
    if (spec.n_runs < 1)
        throw ConfigError("batch.n_runs: must be at least 1");
    spec.master_seed = count_field(*this, "batch.master_seed");
    spec.parallelism = static_cast<unsigned>(
        count_field(*this, "batch.parallelism"));
    spec.cfg.record_stride = count_field(*this, "batch.record_stride");
    spec.fresh_graph_per_run = bool_field(*this, "batch.fresh_graph");
    return spec;
}

std::string ExperimentConfig::output_root() const
{
    auto const& dir = get("output.directory");
    if (!dir.empty())
        return dir;
    if (char const* env = std::getenv(env_output_root()); env && *env)
        return env;
    return "results";
}

std::string ExperimentConfig::to_document() const
{
    std::ostringstream out;
    std::string section;
    for (auto const& [key, value] : values_)
    {
        auto dot = key.find('.');
        auto sec = key.substr(0, dot);
        if (sec != section)
        {
            if (!section.empty())
                out << '\n';
            out << '[' << sec << "]\n";
            section = sec;
        }
        out << key.substr(dot + 1) << " = " << value << '\n';
    }
    return out.str();
}

std::string ExperimentConfig::spec_hash() const
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&](std::string const& s) {
        for (unsigned char c : s)
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= 0xff;
        h *= 0x100000001b3ull;
    };
    for (auto const& [key, value] : values_)
    {
        if (key == "batch.parallelism" || key == "output.directory")
            continue;
        feed(key);
        feed(value);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace aonpg
