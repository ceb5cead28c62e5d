#pragma once

// CSV outputs. Headers are fixed; reals are written with 17 significant
// digits so values round-trip exactly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aonpg/stats.hpp"

namespace aonpg {

inline constexpr char const* runs_csv_header
    = "run_id,graph_id,seed,r_g_or_l,n,alpha,m,T,converged,tau,"
      "final_mean_belief,mean_degree,triangle_count,max_degree";
inline constexpr char const* tail_csv_header = "t,survival";
inline constexpr char const* ratio_csv_header
    = "t,n_pairs,replacement,p_max,p_sum,ratio";
inline constexpr char const* series_csv_header = "round,total_belief";

//! "%.17g"
std::string format_real(double v);

void write_runs_csv(BatchResult const& batch, std::ostream& out);
void write_tail_csv(std::span<SurvivalPoint const> tail, std::ostream& out);
void write_ratio_csv(double t, CatastropheRatio const& r,
                     bool with_replacement, std::ostream& out);
void write_series_csv(std::span<SeriesPoint const> series, std::ostream& out);

//! One parsed runs.csv row; only the fields needed downstream.
struct RunRow
{
    std::size_t run_id;
    std::string converged;
    std::optional<std::uint64_t> tau;
    std::uint64_t max_rounds;
    double final_mean_belief;
};

//! Throws ParseError (with line number) on a bad header or row.
std::vector<RunRow> read_runs_csv(std::istream& in);

//! tau, or T + 1 for timed-out rows.
std::vector<double> censored_taus(std::span<RunRow const> rows);

}  // namespace aonpg
