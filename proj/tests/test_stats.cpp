#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aonpg/io.hpp"
#include "aonpg/stats.hpp"

using namespace aonpg;

namespace {

BatchSpec circulant_spec(std::size_t l, std::size_t runs, std::uint64_t T)
{
    BatchSpec spec;
    spec.graph.kind = GraphKind::Circulant;
    spec.graph.n = 50;
    spec.graph.l = l;
    spec.n_runs = runs;
    spec.fresh_graph_per_run = false;
    spec.cfg.max_rounds = T;
    spec.master_seed = 17;
    return spec;
}

std::string runs_csv(BatchResult const& b)
{
    std::ostringstream s;
    write_runs_csv(b, s);
    return s.str();
}

// Every interval of >= 2 interior samples whose values all lie within
// band of its own mean.
bool brute_force_has_plateau(std::vector<double> const& v, double population,
                             double band)
{
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        for (std::size_t j = i + 1; j < v.size(); ++j)
        {
            bool ok = true;
            double mean = 0;
            for (std::size_t k = i; k <= j; ++k)
            {
                ok &= v[k] >= band && v[k] <= population - band;
                mean += v[k];
            }
            mean /= double(j - i + 1);
            for (std::size_t k = i; k <= j && ok; ++k)
                ok &= std::abs(v[k] - mean) <= band;
            if (ok)
                return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("run_batch")
{
    SUBCASE("a single run matches engine::run")
    {
        auto spec = circulant_spec(2, 1, 100000);
        auto b = run_batch(spec);
        REQUIRE(b.runs.size() == 1);
        SimConfig cfg = spec.cfg;
        cfg.seed = run_seed(spec.master_seed, 0);
        auto direct = run(circulant(50, 2), cfg);
        CHECK(b.runs[0].result.final_beliefs == direct.final_beliefs);
        CHECK(b.runs[0].result.tau == direct.tau);
        CHECK(b.runs[0].seed == cfg.seed);
    }
    SUBCASE("results do not depend on parallelism")
    {
        BatchSpec spec;
        spec.graph.kind = GraphKind::RandomGeometric;
        spec.graph.radius = 0.3;
        spec.n_runs = 12;
        spec.cfg.max_rounds = 20000;
        spec.master_seed = 99;
        spec.parallelism = 1;
        auto serial = runs_csv(run_batch(spec));
        spec.parallelism = 4;
        auto parallel = runs_csv(run_batch(spec));
        CHECK(serial == parallel);
        CHECK(serial == runs_csv(run_batch(spec)));
    }
    SUBCASE("fresh graphs differ per run; records carry their metrics")
    {
        BatchSpec spec;
        spec.graph.radius = 0.25;
        spec.n_runs = 5;
        spec.cfg.max_rounds = 1000;
        auto b = run_batch(spec);
        CHECK(b.runs[0].metrics.edge_count != b.runs[1].metrics.edge_count);
        for (std::size_t i = 0; i < 5; ++i)
        {
            CHECK(b.runs[i].graph_id == i);
            CHECK(b.runs[i].metrics.connected);
        }
    }
    SUBCASE("graph failures name the run")
    {
        BatchSpec spec;
        spec.graph.radius = 0.01;
        spec.graph.max_attempts = 3;
        spec.n_runs = 2;
        CHECK_THROWS_AS(run_batch(spec), BatchError);
    }
    SUBCASE("invalid specs")
    {
        auto spec = circulant_spec(2, 0, 10);
        CHECK_THROWS_AS(run_batch(spec), std::invalid_argument);
        spec = circulant_spec(3, 1, 10);
        CHECK_THROWS_AS(run_batch(spec), std::invalid_argument);
    }
}

TEST_CASE("outcome_table")
{
    BatchResult b;
    b.runs.resize(4);
    auto t = outcome_table(b);
    CHECK(t.frac_timeout() == 1.0);
    CHECK(t.frac_contribute() == 0.0);
    b.runs[0].result.converged = Outcome::ContributeCorner;
    b.runs[1].result.converged = Outcome::DefectCorner;
    b.runs[2].result.converged = Outcome::DefectCorner;
    t = outcome_table(b);
    CHECK(t.frac_contribute() == 0.25);
    CHECK(t.frac_defect() == 0.5);
    CHECK(t.frac_timeout() == 0.25);
    CHECK(t.contribute + t.defect + t.timeout == 4);
}

TEST_CASE("tail_probability")
{
    std::vector<std::uint64_t> taus{1, 2, 3, 4};
    std::vector<std::uint64_t> grid{0, 3, 5};
    auto tail = tail_probability(taus, grid);
    CHECK(tail[0].survival == 1.0);
    CHECK(tail[1].survival == 0.5);
    CHECK(tail[2].survival == 0.0);

    std::vector<std::uint64_t> empty;
    CHECK_THROWS_AS(tail_probability(empty, grid), std::invalid_argument);
    std::vector<std::uint64_t> bad{5, 3};
    CHECK_THROWS_AS(tail_probability(taus, bad), std::invalid_argument);

    // Nonincreasing on random samples over a log grid.
    Rng rng(4);
    std::vector<std::uint64_t> sample(500);
    for (auto& t : sample)
        t = rng.below(1'000'000);
    auto g = log_grid(1'000'000);
    CHECK(g.front() == 1);
    CHECK(g.back() == 1'000'000);
    CHECK(std::is_sorted(g.begin(), g.end()));
    auto curve = tail_probability(sample, g);
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].survival <= curve[i - 1].survival);
}

TEST_CASE("catastrophe_ratio")
{
    Rng rng(1);
    std::vector<double> fives(10, 5.0);
    auto r = catastrophe_ratio(fives, 8.0, 5, false, rng);
    CHECK(r.p_max == 0.0);
    CHECK(r.p_sum == 1.0);
    CHECK(r.ratio == 0.0);

    auto none = catastrophe_ratio(fives, 100.0, 5, false, rng);
    CHECK_FALSE(none.ratio.has_value());

    // pairing i with i + n_pairs
    std::vector<double> s{1, 2, 10, 20};
    auto p = catastrophe_ratio(s, 15.0, 2, false, rng);
    CHECK(p.max_exceed == 1);  // (2, 20)
    CHECK(p.sum_exceed == 1);

    CHECK_THROWS_AS(catastrophe_ratio(s, 1.0, 3, false, rng), std::invalid_argument);
    std::vector<double> two{1.0, 2.0};
    CHECK_NOTHROW(catastrophe_ratio(two, 1.0, 250, true, rng));

    // p_max <= p_sum on arbitrary nonnegative input.
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> v(2 + rng.below(50));
        for (auto& x : v)
            x = rng.uniform() * 100;
        double const t = rng.uniform() * 150;
        auto q = catastrophe_ratio(v, t, v.size() / 2, trial % 2 == 0, rng);
        CHECK(q.p_max <= q.p_sum);
        if (q.ratio)
        {
            CHECK(*q.ratio >= 0.0);
            CHECK(*q.ratio <= 1.0);
        }
    }
}

TEST_CASE("pearson and scatter")
{
    std::vector<double> x{1, 2, 3, 4};
    std::vector<double> y{2, 4, 6, 8};
    std::vector<double> z{8, 6, 4, 2};
    CHECK(*pearson(x, y) == doctest::Approx(1.0));
    CHECK(*pearson(x, z) == doctest::Approx(-1.0));
    std::vector<double> flat{1, 1, 1, 1};
    CHECK_FALSE(pearson(x, flat).has_value());

    BatchResult b;
    b.runs.resize(1);
    b.runs[0].result.final_beliefs = {0.0, 0.0};
    b.runs[0].metrics.mean_degree = 3.0;
    std::vector<BatchResult> batches{b};
    auto sc = belief_metric_scatter(batches);
    CHECK(sc.records.size() == 1);
    CHECK(sc.records[0].final_mean_belief == 0.0);
}

TEST_CASE("metastability_report")
{
    SUBCASE("constant series at N/2 is one plateau")
    {
        std::vector<SeriesPoint> s;
        for (std::uint64_t i = 0; i <= 1000; ++i)
            s.push_back({i * 100, 25.0});
        auto rep = metastability_report(s, 50.0, 100, 2.5);
        REQUIRE(rep.plateaus.size() == 1);
        CHECK(rep.longest->start_round == 0);
        CHECK(rep.longest->end_round == 100000);
        CHECK(rep.longest->level == 25.0);
    }
    SUBCASE("fast geometric decay has no plateau")
    {
        // With ratio q < 1/3 no two consecutive values can sit within band
        // of their mean while both stay above band.
        for (double band : {0.01, 0.1, 0.5, 2.5})
        {
            std::vector<SeriesPoint> s;
            std::vector<double> values;
            double v = 50.0;
            for (std::uint64_t i = 0; i < 60; ++i, v *= 0.25)
            {
                s.push_back({i * 10, v});
                values.push_back(v);
            }
            CHECK_FALSE(brute_force_has_plateau(values, 50.0, band));
            auto rep = metastability_report(s, 50.0, 1, band);
            CHECK(rep.plateaus.empty());
        }
    }
    SUBCASE("series stuck in a corner band")
    {
        std::vector<SeriesPoint> s;
        for (std::uint64_t i = 0; i < 100; ++i)
            s.push_back({i, 49.0 + 0.5 * (i % 2)});
        CHECK(metastability_report(s, 50.0, 10, 2.5).plateaus.empty());
    }
    SUBCASE("plateau then jump")
    {
        std::vector<SeriesPoint> s;
        Rng rng(3);
        for (std::uint64_t i = 0; i < 200; ++i)
            s.push_back({i * 1000, 20.0 + rng.uniform()});
        for (std::uint64_t i = 200; i < 220; ++i)
            s.push_back({i * 1000, 50.0});
        auto rep = metastability_report(s, 50.0, 10, 2.5);
        REQUIRE(rep.longest);
        CHECK(rep.longest->start_round == 0);
        CHECK(rep.longest->length() >= 190000);
        CHECK(rep.longest->level == doctest::Approx(20.5).epsilon(0.05));
    }
    std::vector<SeriesPoint> empty;
    CHECK_THROWS_AS(metastability_report(empty, 50.0), std::invalid_argument);
}
