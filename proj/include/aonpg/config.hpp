#pragma once

// Experiment configuration document.
//
// Grammar (one item per line, '#' starts a comment, blank lines ignored):
//
//   [section]
//   key = value
//
// Sections and keys (defaults in parentheses):
//
//   [game]    alpha (0.3), m (4), eps_stop (1e-4), T (10000000)
//   [graph]   kind (rgg | circulant | file; rgg), n (50), r_g (0.3), l (2),
//             path (""), max_attempts (1000000)
//   [batch]   n_runs (500), master_seed (0), parallelism (1),
//             record_stride (0), fresh_graph (true)
//   [output]  directory ("" -> $AONPG_OUTPUT_ROOT, else "results")

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

#include "aonpg/stats.hpp"

namespace aonpg {

//! Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class ExperimentConfig
{
  public:
    //! All keys at their defaults.
    ExperimentConfig();

    //! Parse a document on top of the defaults. Throws ConfigError.
    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig load(std::string const& path);

    //! Set "section.key" to a raw value; unknown keys throw ConfigError.
    void set(std::string const& key, std::string value);
    std::string const& get(std::string const& key) const;

    //! Typed view; validates every field and throws ConfigError.
    BatchSpec batch_spec() const;

    //! Resolved output root (config, then environment, then "results").
    std::string output_root() const;

    //! Sectioned document reproducing this configuration.
    std::string to_document() const;

    //! FNV-1a over the result-relevant keys (parallelism and output
    //! directory excluded), as 16 hex digits.
    std::string spec_hash() const;

    static char const* env_output_root() noexcept { return "AONPG_OUTPUT_ROOT"; }

  private:
    std::map<std::string, std::string> values_;
};

}  // namespace aonpg
