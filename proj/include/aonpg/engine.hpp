#pragma once

// Round-by-round dynamics on a graph: a uniformly drawn focal vertex and its
// closed neighborhood play one all-or-nothing public goods game, then every
// participant updates its belief from the actions of the others.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aonpg/core.hpp"
#include "aonpg/graph.hpp"
#include "aonpg/rng.hpp"

namespace aonpg {

struct SimConfig
{
    LearningRate alpha{0.3};
    double payoff_exponent = 4.0;
    double eps_stop = 1e-4;
    std::uint64_t max_rounds = 10'000'000;
    std::uint64_t seed = 0;
    //! Record total belief every this many rounds; 0 disables recording.
    std::uint64_t record_stride = 0;

    //! Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct SimState
{
    std::vector<double> beliefs;
    std::uint64_t round = 0;
};

struct RoundOutcome
{
    Vertex focal = 0;
    std::vector<Vertex> participants;
    int group_size = 0;
    std::vector<Action> actions;
    std::vector<double> lambdas;
    bool all_contributed = false;
};

enum class Convergence : std::uint8_t
{
    None,
    ContributeCorner,
    DefectCorner,
};

enum class Outcome : std::uint8_t
{
    ContributeCorner,
    DefectCorner,
    TimedOut,
};

const char* to_string(Outcome o) noexcept;

struct SeriesPoint
{
    std::uint64_t round;
    double total_belief;
};

struct RunResult
{
    Outcome converged = Outcome::TimedOut;
    std::optional<std::uint64_t> tau;
    std::vector<double> final_beliefs;
    std::vector<SeriesPoint> total_belief_series;
    std::uint64_t rounds_executed = 0;

    double final_mean_belief() const noexcept;
};

//! n iid Uniform[0,1) beliefs at round 0.
SimState init_state(std::size_t n, Rng& rng);

/*!
 * Play one round in place.
 *
 * Random draws happen in a fixed order: the focal vertex, then one lambda
 * per participant in ascending vertex id. Actions follow deterministically.
 * Lambdas are drawn even when a decision is forced by x = 0 or x = 1.
 */
RoundOutcome step(SimState& state, Graph const& g, SimConfig const& cfg,
                  Rng& rng);

Convergence check_convergence(std::span<double const> beliefs,
                              double eps_stop) noexcept;

//---------------------------------------------------------------------------//
/*!
 * A single run with cached neighborhoods and incremental convergence
 * tracking. \c step consumes the random stream exactly like the free
 * function \c step, so both paths produce identical trajectories.
 */
class Simulation
{
  public:
    //! Beliefs drawn by init_state from the stream seeded with cfg.seed.
    Simulation(Graph const& g, SimConfig const& cfg);

    //! Start from given beliefs; the stream is still seeded with cfg.seed.
    Simulation(Graph const& g, SimConfig const& cfg,
               std::vector<double> initial_beliefs);

    //! Advance one round. The returned reference is valid until the next step.
    RoundOutcome const& step();

    //! Same as step() without materializing the outcome.
    void advance();

    Convergence convergence() const noexcept;
    SimState const& state() const noexcept { return state_; }
    double total_belief() const noexcept;

    //! Step until a corner is reached or max_rounds rounds have run.
    RunResult run();

  private:
    template<bool Record>
    void play_round();

    void classify(double x, int delta) noexcept;

    Graph const* graph_;
    SimConfig cfg_;
    PayoffModel model_;
    Rng rng_;
    SimState state_;
    std::vector<std::size_t> hood_offsets_;
    std::vector<Vertex> hood_members_;
    std::vector<char> contributed_;
    RoundOutcome outcome_;
    std::size_t below_ = 0;
    std::size_t above_ = 0;
};

//! Convenience wrapper: Simulation(g, cfg).run().
RunResult run(Graph const& g, SimConfig const& cfg);

//! Rounds of universal defection needed to bring any belief below eps:
//! ceil(log(eps) / log(1 - alpha)).
std::uint64_t absorption_horizon(LearningRate alpha, double eps);

//! alpha / d with d = max degree - 1; throws if the max degree is below 2.
double corner_epsilon_bound(Graph const& g, LearningRate alpha);

}  // namespace aonpg
