#include "aonpg/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace aonpg {

const char* to_string(GraphKind k) noexcept
{
    switch (k)
    {
        case GraphKind::RandomGeometric:
            return "rgg";
        case GraphKind::Circulant:
            return "circulant";
        case GraphKind::File:
            break;
    }
    return "file";
}

void GraphSource::validate() const
{
    switch (kind)
    {
        case GraphKind::RandomGeometric:
            if (n < 1)
                throw std::invalid_argument("graph.n must be at least 1");
            if (!(radius > 0.0 && radius < 1.0))
                throw std::invalid_argument("graph.r_g must lie in (0, 1)");
            if (max_attempts < 1)
                throw std::invalid_argument(
                    "graph.max_attempts must be at least 1");
            break;
        case GraphKind::Circulant:
            if (l % 2 != 0)
                throw std::invalid_argument("graph.l must be even, got "
                                            + std::to_string(l));
            if (l < 2 || l + 1 > n)
                throw std::invalid_argument(
                    "graph.l must satisfy 2 <= l <= n-1");
            break;
        case GraphKind::File:
            if (path.empty())
                throw std::invalid_argument("graph.path is required for file graphs");
            break;
    }
}

void BatchSpec::validate() const
{
    graph.validate();
    cfg.validate();
    if (n_runs < 1)
        throw std::invalid_argument("batch.n_runs must be at least 1");
}

BatchError::BatchError(std::size_t run_id, std::string const& what)
    : std::runtime_error("run " + std::to_string(run_id) + ": " + what)
    , run_id_(run_id)
{
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run_id) noexcept
{
    return derive_seed(master_seed, run_id);
}

std::uint64_t graph_seed(std::uint64_t seed) noexcept
{
    // Separate stream tag so graph draws never alias the dynamics stream.
    return derive_seed(seed ^ 0x6772617068000000ull, 0);
}

namespace {

Graph load_graph_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file '" + path + "'");
    return load_edge_list(in);
}

struct SharedGraph
{
    Graph graph;
    GraphMetrics metrics;
    std::size_t attempts = 1;
};

}  // namespace

BatchResult run_batch(BatchSpec const& spec)
{
    spec.validate();
    BatchResult out;
    out.spec = spec;
    out.runs.resize(spec.n_runs);

    bool const fresh = spec.graph.kind == GraphKind::RandomGeometric
                       && spec.fresh_graph_per_run;
    std::optional<SharedGraph> shared;
    if (!fresh)
    {
        SharedGraph s;
        switch (spec.graph.kind)
        {
            case GraphKind::RandomGeometric: {
                Rng grng(graph_seed(spec.master_seed));
                auto sampled = connected_random_geometric(
                    spec.graph.n, spec.graph.radius, grng,
                    spec.graph.max_attempts);
                s.graph = std::move(sampled.graph);
                s.attempts = sampled.attempts;
                break;
            }
            case GraphKind::Circulant:
                s.graph = circulant(spec.graph.n, spec.graph.l);
                break;
            case GraphKind::File:
                s.graph = load_graph_file(spec.graph.path);
                break;
        }
        s.metrics = compute_metrics(s.graph);
        shared = std::move(s);
    }

    auto execute = [&](std::size_t i) {
        RunRecord& rec = out.runs[i];
        rec.run_id = i;
        rec.seed = run_seed(spec.master_seed, i);
        SimConfig cfg = spec.cfg;
        cfg.seed = rec.seed;
        if (fresh)
        {
            Rng grng(graph_seed(rec.seed));
            auto sampled = connected_random_geometric(
                spec.graph.n, spec.graph.radius, grng,
                spec.graph.max_attempts);
            rec.graph_id = i;
            rec.graph_attempts = sampled.attempts;
            rec.metrics = compute_metrics(sampled.graph);
            rec.result = run(sampled.graph, cfg);
        }
        else
        {
            rec.graph_id = 0;
            rec.graph_attempts = shared->attempts;
            rec.metrics = shared->metrics;
            rec.result = run(shared->graph, cfg);
        }
    };

    unsigned workers = spec.parallelism != 0
                           ? spec.parallelism
                           : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, spec.n_runs));

    std::vector<std::exception_ptr> errors(spec.n_runs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < spec.n_runs;)
        {
            try
            {
                execute(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < errors.size(); ++i)
    {
        if (!errors[i])
            continue;
        try
        {
            std::rethrow_exception(errors[i]);
        }
        catch (std::exception const& e)
        {
            throw BatchError(i, e.what());
        }
    }
    return out;
}

//---------------------------------------------------------------------------//

namespace {
double fraction(std::size_t part, std::size_t total) noexcept
{
    return total == 0 ? 0.0
                      : static_cast<double>(part) / static_cast<double>(total);
}
}  // namespace

double OutcomeTable::frac_contribute() const noexcept
{
    return fraction(contribute, total());
}
double OutcomeTable::frac_defect() const noexcept
{
    return fraction(defect, total());
}
double OutcomeTable::frac_timeout() const noexcept
{
    return fraction(timeout, total());
}

OutcomeTable outcome_table(BatchResult const& batch)
{
    OutcomeTable t;
    for (auto const& r : batch.runs)
    {
        switch (r.result.converged)
        {
            case Outcome::ContributeCorner:
                ++t.contribute;
                break;
            case Outcome::DefectCorner:
                ++t.defect;
                break;
            case Outcome::TimedOut:
                ++t.timeout;
                break;
        }
    }
    return t;
}

std::vector<std::uint64_t> censored_taus(BatchResult const& batch)
{
    std::vector<std::uint64_t> taus;
    taus.reserve(batch.runs.size());
    for (auto const& r : batch.runs)
    {
        taus.push_back(r.result.tau ? *r.result.tau
                                    : batch.spec.cfg.max_rounds + 1);
    }
    return taus;
}

std::vector<SurvivalPoint> tail_probability(std::span<std::uint64_t const> taus,
                                            std::span<std::uint64_t const> grid)
{
    if (taus.empty())
        throw std::invalid_argument("tail probability of an empty sample");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("tail probability grid must be ascending");
    std::vector<std::uint64_t> sorted(taus.begin(), taus.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<SurvivalPoint> out;
    out.reserve(grid.size());
    for (auto t : grid)
    {
        auto const at_least = static_cast<std::size_t>(
            sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t));
        out.push_back({t, fraction(at_least, sorted.size())});
    }
    return out;
}

std::vector<std::uint64_t> log_grid(std::uint64_t t_max,
                                    unsigned points_per_decade)
{
    if (points_per_decade == 0)
        throw std::invalid_argument("points_per_decade must be positive");
    std::set<std::uint64_t> pts;
    if (t_max >= 1)
    {
        double const top = std::log10(static_cast<double>(t_max));
        auto const steps = static_cast<std::uint64_t>(
            std::ceil(top * points_per_decade));
        for (std::uint64_t i = 0; i <= steps; ++i)
        {
            double const e = std::min(top, static_cast<double>(i)
                                               / points_per_decade);
            auto t = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
            pts.insert(std::clamp<std::uint64_t>(t, 1, t_max));
        }
        pts.insert(t_max);
    }
    return {pts.begin(), pts.end()};
}

CatastropheRatio catastrophe_ratio(std::span<double const> samples, double t,
                                   std::size_t n_pairs, bool with_replacement,
                                   Rng& rng)
{
    if (n_pairs < 1)
        throw std::invalid_argument("n_pairs must be at least 1");
    if (samples.empty())
        throw std::invalid_argument("catastrophe ratio of an empty sample");
    if (!with_replacement && samples.size() < 2 * n_pairs)
    {
        throw std::invalid_argument(
            "pairing without replacement needs " + std::to_string(2 * n_pairs)
            + " samples, got " + std::to_string(samples.size()));
    }
    CatastropheRatio r;
    r.n_pairs = n_pairs;
    for (std::size_t i = 0; i < n_pairs; ++i)
    {
        double a, b;
        if (with_replacement)
        {
            a = samples[rng.below(samples.size())];
            b = samples[rng.below(samples.size())];
        }
        else
        {
            a = samples[i];
            b = samples[i + n_pairs];
        }
        r.max_exceed += std::max(a, b) > t;
        r.sum_exceed += a + b > t;
    }
    r.p_max = fraction(r.max_exceed, n_pairs);
    r.p_sum = fraction(r.sum_exceed, n_pairs);
    if (r.sum_exceed > 0)
        r.ratio = static_cast<double>(r.max_exceed)
                  / static_cast<double>(r.sum_exceed);
    return r;
}

std::optional<double> pearson(std::span<double const> xs,
                              std::span<double const> ys)
{
    if (xs.size() != ys.size())
        throw std::invalid_argument("pearson: length mismatch");
    auto const n = static_cast<double>(xs.size());
    if (xs.size() < 2)
        return std::nullopt;
    double const mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double const my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        double const dx = xs[i] - mx;
        double const dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

BeliefMetricScatter belief_metric_scatter(std::span<BatchResult const> batches)
{
    BeliefMetricScatter out;
    for (auto const& b : batches)
    {
        double const param = b.spec.graph.kind == GraphKind::Circulant
                                 ? static_cast<double>(b.spec.graph.l)
                                 : b.spec.graph.radius;
        for (auto const& r : b.runs)
        {
            out.records.push_back({r.metrics.mean_degree,
                                   r.metrics.triangle_count,
                                   r.result.final_mean_belief(), param});
        }
    }
    std::vector<double> deg, tri, belief;
    for (auto const& rec : out.records)
    {
        deg.push_back(rec.mean_degree);
        tri.push_back(static_cast<double>(rec.triangle_count));
        belief.push_back(rec.final_mean_belief);
    }
    out.corr_mean_degree = pearson(deg, belief);
    out.corr_triangles = pearson(tri, belief);
    return out;
}

MetastabilityReport metastability_report(std::span<SeriesPoint const> series,
                                         double population,
                                         std::size_t window, double band)
{
    if (series.empty())
        throw std::invalid_argument("metastability report needs a recorded series");
    if (window < 1)
        throw std::invalid_argument("window must be at least 1");

    auto const n = series.size();
    std::vector<double> smooth(n);
    double running = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        running += series[i].total_belief;
        if (i >= window)
            running -= series[i - window].total_belief;
        smooth[i] = running / static_cast<double>(std::min(i + 1, window));
    }
    auto interior = [&](double v) {
        return v >= band && v <= population - band;
    };

    MetastabilityReport report;
    auto close = [&](std::size_t first, std::size_t last, double mean) {
        if (last <= first)
            return;
        Plateau p{series[first].round, series[last].round, mean,
                  last + 1 < n ? series[last + 1].round : series[last].round};
        report.plateaus.push_back(p);
        if (!report.longest || p.length() > report.longest->length())
            report.longest = p;
    };

    std::size_t i = 0;
    while (i < n)
    {
        if (!interior(smooth[i]))
        {
            ++i;
            continue;
        }
        double sum = smooth[i], lo = smooth[i], hi = smooth[i];
        std::size_t j = i + 1;
        for (; j < n && interior(smooth[j]); ++j)
        {
            double const s = sum + smooth[j];
            double const mean = s / static_cast<double>(j - i + 1);
            double const nlo = std::min(lo, smooth[j]);
            double const nhi = std::max(hi, smooth[j]);
            if (nhi - mean > band || mean - nlo > band)
                break;
            sum = s;
            lo = nlo;
            hi = nhi;
        }
        close(i, j - 1, sum / static_cast<double>(j - i));
        i = j;
    }
    return report;
}

}  // namespace aonpg
