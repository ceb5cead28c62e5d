#pragma once

// Subcommand bodies behind the command-line tool. Each returns the process
// exit status and reports through the given streams.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "aonpg/config.hpp"

namespace aonpg::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_config = 2;

//! One run (batch of size 1); writes runs.csv and series_0.csv if recording.
int cmd_run(ExperimentConfig const& config, std::ostream& out,
            std::ostream& err);

//! Full batch; writes runs.csv, tail.csv and optional series files, and
//! prints the outcome table.
int cmd_batch(ExperimentConfig const& config, std::ostream& out,
              std::ostream& err);

struct RatioOptions
{
    std::string runs_csv;
    double t = 1e6;
    std::size_t pairs = 250;
    bool replacement = false;
    std::uint64_t seed = 0;
    //! Defaults to the directory holding runs_csv.
    std::string out_dir;
};

int cmd_ratio(RatioOptions const& opts, std::ostream& out, std::ostream& err);

//! Generate the configured graph, save it (plus positions for geometric
//! graphs) and print its metrics. Empty out_path picks a default location.
int cmd_graph(ExperimentConfig const& config, std::string out_path,
              std::ostream& out, std::ostream& err);

}  // namespace aonpg::cli
