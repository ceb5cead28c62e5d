// Command-line driver: run, batch, ratio, graph.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aonpg/commands.hpp"
#include "aonpg/config.hpp"

namespace {

struct Flag
{
    char const* name;
    char const* key;
    char const* help;
};

// Every flag mirrors one configuration key; defaults follow the reference
// simulation setup.
constexpr Flag game_flags[] = {
    {"--alpha", "game.alpha", "learning rate in (0,1) (default 0.3)"},
    {"--m", "game.m", "payoff exponent, F(x) = x^(1/m) (default 4)"},
    {"--eps", "game.eps_stop", "convergence threshold eps_s (default 1e-4)"},
    {"--T", "game.T", "maximum number of rounds (default 10000000)"},
    {"--stride", "batch.record_stride",
     "record total belief every this many rounds, 0 = off (default 0)"},
};

constexpr Flag graph_flags[] = {
    {"--n", "graph.n", "population size N (default 50)"},
    {"--r-g", "graph.r_g", "geometric graph radius (default 0.3)"},
    {"--l", "graph.l", "circulant neighbors, even (default 2)"},
    {"--path", "graph.path", "edge-list file for --graph file"},
    {"--max-attempts", "graph.max_attempts",
     "connected-graph rejection attempts (default 1000000)"},
    {"--seed", "batch.master_seed", "master seed (default 0)"},
    {"--out", "output.directory",
     "output root (default $AONPG_OUTPUT_ROOT, else ./results)"},
};

constexpr Flag batch_flags[] = {
    {"--runs", "batch.n_runs", "number of runs (default 500)"},
    {"--parallelism", "batch.parallelism",
     "worker threads, 0 = all cores (default 1)"},
    {"--fresh-graph", "batch.fresh_graph",
     "new geometric graph per run (default true)"},
};

struct Binding
{
    CLI::Option* option;
    char const* key;
    std::string value;
};

// Stable storage: options keep pointers into the values.
using Bindings = std::vector<std::unique_ptr<Binding>>;

template<std::size_t N>
void add_flags(CLI::App* app, Flag const (&flags)[N], Bindings& out)
{
    for (auto const& f : flags)
    {
        auto b = std::make_unique<Binding>();
        b->key = f.key;
        b->option = app->add_option(f.name, b->value, f.help);
        out.push_back(std::move(b));
    }
}

aonpg::ExperimentConfig build_config(std::string const& config_path,
                                     Bindings const& bindings,
                                     std::string const& kind)
{
    auto cfg = config_path.empty() ? aonpg::ExperimentConfig{}
                                   : aonpg::ExperimentConfig::load(config_path);
    if (!kind.empty())
        cfg.set("graph.kind", kind);
    for (auto const& b : bindings)
    {
        if (b->option->count() > 0)
            cfg.set(b->key, b->value);
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"All-or-nothing public goods game with EMA-learning agents "
                 "on networks.\nDefaults: alpha = 0.3, N = 50, F(x) = x^(1/4), "
                 "eps_s = 1e-4, T = 1e7, 500 runs."};
    app.require_subcommand(1);

    std::string config_path, kind;
    Bindings run_b, batch_b, graph_b;

    auto* run = app.add_subcommand("run", "Single simulation run");
    run->add_option("--config", config_path, "key = value config file");
    run->add_option("--graph", kind, "graph kind: rgg | circulant | file (default rgg)")
        ->check(CLI::IsMember({"rgg", "circulant", "file"}));
    add_flags(run, game_flags, run_b);
    add_flags(run, graph_flags, run_b);

    auto* batch = app.add_subcommand("batch", "Batch of independent runs");
    batch->add_option("--config", config_path, "key = value config file");
    batch->add_option("--graph", kind, "graph kind: rgg | circulant | file (default rgg)")
        ->check(CLI::IsMember({"rgg", "circulant", "file"}));
    add_flags(batch, game_flags, batch_b);
    add_flags(batch, graph_flags, batch_b);
    add_flags(batch, batch_flags, batch_b);

    aonpg::cli::RatioOptions ratio_opts;
    auto* ratio = app.add_subcommand("ratio", "Max-vs-sum tail ratio from runs.csv");
    ratio->add_option("runs_csv", ratio_opts.runs_csv, "runs.csv produced by batch")
        ->required();
    ratio->add_option("--t", ratio_opts.t, "threshold t (default 1e6)");
    ratio->add_option("--pairs", ratio_opts.pairs, "number of pairs (default 250)");
    ratio->add_flag("--replacement", ratio_opts.replacement,
                    "sample pairs with replacement (default: run i with run i+pairs)");
    ratio->add_option("--seed", ratio_opts.seed, "seed for resampling (default 0)");
    ratio->add_option("--out", ratio_opts.out_dir,
                      "output directory (default: next to runs.csv)");

    std::string graph_out;
    auto* graph = app.add_subcommand("graph", "Generate and save a graph");
    graph->add_option("--config", config_path, "key = value config file");
    graph->add_option("kind", kind, "rgg | circulant | file")
        ->required()
        ->check(CLI::IsMember({"rgg", "circulant", "file"}));
    add_flags(graph, graph_flags, graph_b);
    graph->add_option("--file", graph_out,
                      "edge-list output path (positions go to <file>.positions)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
            return aonpg::cli::cmd_run(build_config(config_path, run_b, kind),
                                       std::cout, std::cerr);
        if (*batch)
            return aonpg::cli::cmd_batch(build_config(config_path, batch_b, kind),
                                         std::cout, std::cerr);
        if (*ratio)
            return aonpg::cli::cmd_ratio(ratio_opts, std::cout, std::cerr);
        if (*graph)
            return aonpg::cli::cmd_graph(build_config(config_path, graph_b, kind),
                                         graph_out, std::cout, std::cerr);
    }
    catch (aonpg::ConfigError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return aonpg::cli::exit_config;
    }
    return aonpg::cli::exit_failure;
}
