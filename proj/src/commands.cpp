#include "aonpg/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "aonpg/io.hpp"

namespace fs = std::filesystem;

namespace aonpg::cli {

namespace {

class WriteError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

template<class Fn>
void write_file(fs::path const& path, Fn&& fn)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw WriteError("cannot open '" + path.string() + "' for writing");
    fn(f);
    f.flush();
    if (!f)
        throw WriteError("failed writing '" + path.string() + "'");
}

fs::path prepare_dir(ExperimentConfig const& config, char const* prefix)
{
    fs::path dir = fs::path(config.output_root())
                   / (std::string(prefix) + "-" + config.spec_hash());
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw WriteError("cannot create '" + dir.string() + "': " + ec.message());
    write_file(dir / "config.ini",
               [&](std::ostream& o) { o << config.to_document(); });
    return dir;
}

void print_table(OutcomeTable const& t, std::ostream& out)
{
    out << "runs " << t.total() << '\n'
        << "frac_contribute " << format_real(t.frac_contribute()) << '\n'
        << "frac_defect " << format_real(t.frac_defect()) << '\n'
        << "frac_timeout " << format_real(t.frac_timeout()) << '\n';
}

// Shared body of run/batch; runs under a try block in the callers.
int execute_batch(ExperimentConfig const& config, BatchSpec const& spec,
                  char const* prefix, bool write_tail, std::ostream& out)
{
    auto const dir = prepare_dir(config, prefix);
    auto const batch = run_batch(spec);

    write_file(dir / "runs.csv",
               [&](std::ostream& o) { write_runs_csv(batch, o); });
    if (write_tail)
    {
        auto taus = censored_taus(batch);
        auto grid = log_grid(spec.cfg.max_rounds + 1);
        grid.insert(grid.begin(), 0);
        auto tail = tail_probability(taus, grid);
        write_file(dir / "tail.csv",
                   [&](std::ostream& o) { write_tail_csv(tail, o); });
    }
    if (spec.cfg.record_stride > 0)
    {
        for (auto const& r : batch.runs)
        {
            write_file(dir / ("series_" + std::to_string(r.run_id) + ".csv"),
                       [&](std::ostream& o) {
                           write_series_csv(r.result.total_belief_series, o);
                       });
        }
    }

    if (batch.runs.size() == 1)
    {
        auto const& r = batch.runs.front().result;
        out << "converged " << to_string(r.converged) << '\n'
            << "tau " << (r.tau ? std::to_string(*r.tau) : "") << '\n'
            << "rounds_executed " << r.rounds_executed << '\n'
            << "final_mean_belief " << format_real(r.final_mean_belief())
            << '\n';
    }
    print_table(outcome_table(batch), out);
    out << "output " << dir.string() << '\n';
    return exit_ok;
}

}  // namespace

int cmd_run(ExperimentConfig const& config, std::ostream& out,
            std::ostream& err)
{
    BatchSpec spec;
    try
    {
        spec = config.batch_spec();
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }
    spec.n_runs = 1;
    ExperimentConfig effective = config;
    effective.set("batch.n_runs", "1");
    try
    {
        return execute_batch(effective, spec, "run", false, out);
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

int cmd_batch(ExperimentConfig const& config, std::ostream& out,
              std::ostream& err)
{
    BatchSpec spec;
    try
    {
        spec = config.batch_spec();
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }
    try
    {
        return execute_batch(config, spec, "batch", true, out);
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

int cmd_ratio(RatioOptions const& opts, std::ostream& out, std::ostream& err)
{
    if (opts.pairs < 1)
    {
        err << "error: pairs must be at least 1\n";
        return exit_config;
    }
    try
    {
        std::ifstream in(opts.runs_csv);
        if (!in)
        {
            err << "error: cannot open runs file '" << opts.runs_csv << "'\n";
            return exit_failure;
        }
        auto rows = read_runs_csv(in);
        if (rows.empty())
        {
            err << "error: '" << opts.runs_csv << "' has no runs\n";
            return exit_failure;
        }
        if (!opts.replacement && rows.size() < 2 * opts.pairs)
        {
            err << "error: pairing without replacement needs "
                << 2 * opts.pairs << " runs, '" << opts.runs_csv << "' has "
                << rows.size() << '\n';
            return exit_failure;
        }
        auto samples = censored_taus(rows);
        Rng rng(opts.seed);
        auto r = catastrophe_ratio(samples, opts.t, opts.pairs,
                                   opts.replacement, rng);

        fs::path dir = opts.out_dir.empty()
                           ? fs::path(opts.runs_csv).parent_path()
                           : fs::path(opts.out_dir);
        if (!dir.empty())
            fs::create_directories(dir);
        write_file(dir / "ratio.csv", [&](std::ostream& o) {
            write_ratio_csv(opts.t, r, opts.replacement, o);
        });
        out << "pairs " << r.n_pairs << '\n'
            << "max_exceed " << r.max_exceed << '\n'
            << "sum_exceed " << r.sum_exceed << '\n'
            << "ratio " << (r.ratio ? format_real(*r.ratio) : "") << '\n'
            << "note timed-out runs counted as tau = T + 1\n"
            << "output " << (dir / "ratio.csv").string() << '\n';
        return exit_ok;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

int cmd_graph(ExperimentConfig const& config, std::string out_path,
              std::ostream& out, std::ostream& err)
{
    BatchSpec spec;
    try
    {
        spec = config.batch_spec();
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_config;
    }
    try
    {
        Graph g;
        std::size_t attempts = 1;
        switch (spec.graph.kind)
        {
            case GraphKind::RandomGeometric: {
                Rng rng(graph_seed(spec.master_seed));
                auto sampled = connected_random_geometric(
                    spec.graph.n, spec.graph.radius, rng,
                    spec.graph.max_attempts);
                g = std::move(sampled.graph);
                attempts = sampled.attempts;
                break;
            }
            case GraphKind::Circulant:
                g = circulant(spec.graph.n, spec.graph.l);
                break;
            case GraphKind::File: {
                std::ifstream in(spec.graph.path);
                if (!in)
                    throw std::runtime_error("cannot open graph file '"
                                             + spec.graph.path + "'");
                g = load_edge_list(in);
                break;
            }
        }

        fs::path path = out_path;
        if (path.empty())
            path = prepare_dir(config, "graph") / "graph.edges";
        else if (path.has_parent_path())
            fs::create_directories(path.parent_path());
        write_file(path, [&](std::ostream& o) { save_edge_list(g, o); });
        if (g.positions())
        {
            auto pos_path = path;
            pos_path += ".positions";
            write_file(pos_path, [&](std::ostream& o) {
                save_positions(*g.positions(), o);
            });
        }

        auto m = compute_metrics(g);
        out << "kind " << to_string(spec.graph.kind) << '\n'
            << "n " << g.size() << '\n'
            << "edges " << m.edge_count << '\n'
            << "mean_degree " << format_real(m.mean_degree) << '\n'
            << "max_degree " << m.max_degree << '\n'
            << "triangles " << m.triangle_count << '\n'
            << "connected " << (m.connected ? "true" : "false") << '\n'
            << "attempts " << attempts << '\n'
            << "output " << path.string() << '\n';
        return exit_ok;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace aonpg::cli
