#pragma once

// Batch orchestration and the statistics computed over batches: outcome
// fractions, empirical survival of the convergence time, the max-vs-sum
// (catastrophe) ratio, belief/metric correlation and plateau detection in
// total-belief series.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aonpg/engine.hpp"
#include "aonpg/graph.hpp"

namespace aonpg {

enum class GraphKind : std::uint8_t
{
    RandomGeometric,
    Circulant,
    File,
};

const char* to_string(GraphKind k) noexcept;

struct GraphSource
{
    GraphKind kind = GraphKind::RandomGeometric;
    std::size_t n = 50;
    double radius = 0.3;
    std::size_t l = 2;
    std::string path;
    std::size_t max_attempts = default_max_attempts;

    void validate() const;
};

struct BatchSpec
{
    GraphSource graph;
    std::size_t n_runs = 500;
    //! New graph per run (meaningful for random geometric sources only).
    bool fresh_graph_per_run = true;
    SimConfig cfg;
    std::uint64_t master_seed = 0;
    //! Worker threads; 0 selects the hardware concurrency.
    unsigned parallelism = 1;

    void validate() const;
};

struct RunRecord
{
    std::size_t run_id = 0;
    std::size_t graph_id = 0;
    std::uint64_t seed = 0;
    std::size_t graph_attempts = 1;
    RunResult result;
    GraphMetrics metrics;
};

struct BatchResult
{
    BatchSpec spec;
    std::vector<RunRecord> runs;
};

//! Failure inside a batch, tagged with the run that raised it.
class BatchError : public std::runtime_error
{
  public:
    BatchError(std::size_t run_id, std::string const& what);
    std::size_t run_id() const noexcept { return run_id_; }

  private:
    std::size_t run_id_;
};

//! Seed of run i: derive_seed(master_seed, i).
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run_id) noexcept;

//! Seed of the graph stream belonging to a run seed.
std::uint64_t graph_seed(std::uint64_t seed) noexcept;

/*!
 * Execute spec.n_runs independent runs.
 *
 * Run i simulates with run_seed(master, i). Random geometric graphs are
 * drawn from graph_seed(run_seed) when fresh per run, or once from
 * graph_seed(master) otherwise. Records are stored by run index, so the
 * result does not depend on the worker count or completion order.
 */
BatchResult run_batch(BatchSpec const& spec);

struct OutcomeTable
{
    std::size_t contribute = 0;
    std::size_t defect = 0;
    std::size_t timeout = 0;

    std::size_t total() const noexcept { return contribute + defect + timeout; }
    double frac_contribute() const noexcept;
    double frac_defect() const noexcept;
    double frac_timeout() const noexcept;
};

OutcomeTable outcome_table(BatchResult const& batch);

//! Convergence times with timed-out runs mapped to max_rounds + 1.
std::vector<std::uint64_t> censored_taus(BatchResult const& batch);

struct SurvivalPoint
{
    std::uint64_t t;
    double survival;
};

//! Empirical P(tau >= t) at each grid point. Grid must be ascending.
std::vector<SurvivalPoint> tail_probability(std::span<std::uint64_t const> taus,
                                            std::span<std::uint64_t const> grid);

//! Distinct integers in [1, t_max] spaced evenly in log10, plus t_max.
std::vector<std::uint64_t> log_grid(std::uint64_t t_max,
                                    unsigned points_per_decade = 20);

struct CatastropheRatio
{
    std::size_t n_pairs = 0;
    std::size_t max_exceed = 0;
    std::size_t sum_exceed = 0;
    double p_max = 0;
    double p_sum = 0;
    //! Absent when no pair sum exceeds the threshold.
    std::optional<double> ratio;
};

/*!
 * Estimate P(max(X1, X2) > t) and P(X1 + X2 > t) over n_pairs pairs.
 *
 * Without replacement sample i is paired with sample i + n_pairs (needs
 * at least 2 n_pairs samples, otherwise std::invalid_argument). With
 * replacement both members of every pair are drawn uniformly from all
 * samples using \p rng.
 */
CatastropheRatio catastrophe_ratio(std::span<double const> samples, double t,
                                   std::size_t n_pairs, bool with_replacement,
                                   Rng& rng);

struct ScatterRecord
{
    double mean_degree;
    std::uint64_t triangle_count;
    double final_mean_belief;
    double graph_parameter;
};

struct BeliefMetricScatter
{
    std::vector<ScatterRecord> records;
    //! Pearson coefficients; absent when a variance is zero.
    std::optional<double> corr_mean_degree;
    std::optional<double> corr_triangles;
};

BeliefMetricScatter belief_metric_scatter(std::span<BatchResult const> batches);

std::optional<double> pearson(std::span<double const> xs,
                              std::span<double const> ys);

struct Plateau
{
    std::uint64_t start_round;
    std::uint64_t end_round;
    double level;
    //! Round of the first sample after the plateau, or end_round at the
    //! end of the series.
    std::uint64_t exit_round;

    std::uint64_t length() const noexcept { return end_round - start_round; }
};

struct MetastabilityReport
{
    std::vector<Plateau> plateaus;
    std::optional<Plateau> longest;
};

/*!
 * Find plateaus in a total-belief series.
 *
 * The series is smoothed by a trailing mean over \p window samples (fewer at
 * the start). Samples whose smoothed value lies within \p band of either
 * corner (0 or \p population) cannot belong to a plateau. The remaining
 * samples are scanned left to right, greedily extending each interval while
 * every smoothed value stays within \p band of the interval mean; intervals
 * with at least two samples are reported. Throws if the series is empty.
 */
MetastabilityReport metastability_report(std::span<SeriesPoint const> series,
                                         double population,
                                         std::size_t window = 100,
                                         double band = 2.5);

}  // namespace aonpg
