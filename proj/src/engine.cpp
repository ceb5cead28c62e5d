#include "aonpg/engine.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aonpg {

void SimConfig::validate() const
{
    PayoffModel{payoff_exponent};
    if (!(eps_stop > 0.0 && eps_stop < 0.5))
    {
        throw std::invalid_argument("eps_stop must lie in (0, 0.5), got "
                                    + std::to_string(eps_stop));
    }
    if (max_rounds < 1)
        throw std::invalid_argument("max_rounds must be at least 1");
}

const char* to_string(Outcome o) noexcept
{
    switch (o)
    {
        case Outcome::ContributeCorner:
            return "contribute";
        case Outcome::DefectCorner:
            return "defect";
        case Outcome::TimedOut:
            break;
    }
    return "timeout";
}

double RunResult::final_mean_belief() const noexcept
{
    if (final_beliefs.empty())
        return 0.0;
    return std::accumulate(final_beliefs.begin(), final_beliefs.end(), 0.0)
           / static_cast<double>(final_beliefs.size());
}

SimState init_state(std::size_t n, Rng& rng)
{
    if (n < 1)
        throw std::invalid_argument("population must have at least 1 agent");
    SimState s;
    s.beliefs.resize(n);
    for (auto& x : s.beliefs)
        x = rng.uniform();
    return s;
}

namespace {

// Plays one game among `members` (ascending ids, focal included). Group size
// 1 only arises for isolated vertices; such rounds change nothing.
template<class OnAction>
void play_game(std::span<double> beliefs, std::span<Vertex const> members,
               PayoffModel const& model, LearningRate alpha, Rng& rng,
               std::vector<char>& contributed, OnAction&& on_action)
{
    int const k = static_cast<int>(members.size());
    if (k < 2)
        return;
    contributed.resize(members.size());
    int total = 0;
    for (std::size_t i = 0; i < members.size(); ++i)
    {
        double const lambda = model.sample_lambda(rng);
        Action const a = decide_action(beliefs[members[i]], k, lambda);
        contributed[i] = (a == Action::Contribute);
        total += contributed[i];
        on_action(a, lambda);
    }
    for (std::size_t i = 0; i < members.size(); ++i)
    {
        double& x = beliefs[members[i]];
        x = update_belief(x, alpha, total - contributed[i], k);
    }
}

}  // namespace

RoundOutcome step(SimState& state, Graph const& g, SimConfig const& cfg,
                  Rng& rng)
{
    if (state.beliefs.size() != g.size())
        throw std::invalid_argument("belief vector length differs from graph size");
    RoundOutcome out;
    out.focal = static_cast<Vertex>(rng.below(g.size()));
    out.participants = closed_neighborhood(g, out.focal);
    out.group_size = static_cast<int>(out.participants.size());
    std::vector<char> scratch;
    PayoffModel const model{cfg.payoff_exponent};
    play_game(state.beliefs, out.participants, model, cfg.alpha, rng,
              scratch, [&](Action a, double lambda) {
                  out.actions.push_back(a);
                  out.lambdas.push_back(lambda);
              });
    out.all_contributed
        = !out.actions.empty()
          && std::all_of(out.actions.begin(), out.actions.end(),
                         [](Action a) { return a == Action::Contribute; });
    ++state.round;
    return out;
}

Convergence check_convergence(std::span<double const> beliefs,
                              double eps_stop) noexcept
{
    if (std::all_of(beliefs.begin(), beliefs.end(),
                    [&](double x) { return x < eps_stop; }))
        return Convergence::DefectCorner;
    if (std::all_of(beliefs.begin(), beliefs.end(),
                    [&](double x) { return x > 1.0 - eps_stop; }))
        return Convergence::ContributeCorner;
    return Convergence::None;
}

//---------------------------------------------------------------------------//

Simulation::Simulation(Graph const& g, SimConfig const& cfg)
    : graph_(&g), cfg_(cfg), model_(cfg.payoff_exponent), rng_(cfg.seed)
{
    cfg_.validate();
    state_ = init_state(g.size(), rng_);
    hood_offsets_.push_back(0);
    for (Vertex v = 0; v < g.size(); ++v)
    {
        auto hood = closed_neighborhood(g, v);
        hood_members_.insert(hood_members_.end(), hood.begin(), hood.end());
        hood_offsets_.push_back(hood_members_.size());
    }
    for (double x : state_.beliefs)
        classify(x, +1);
}

Simulation::Simulation(Graph const& g, SimConfig const& cfg,
                       std::vector<double> initial_beliefs)
    : Simulation(g, cfg)
{
    if (initial_beliefs.size() != g.size())
        throw std::invalid_argument("initial beliefs length differs from graph size");
    for (double x : initial_beliefs)
    {
        if (!(x >= 0.0 && x <= 1.0))
            throw std::invalid_argument("initial belief outside [0, 1]");
    }
    // Reseed so the dynamics stream does not depend on the discarded draws.
    rng_ = Rng(cfg.seed);
    state_.beliefs = std::move(initial_beliefs);
    below_ = above_ = 0;
    for (double x : state_.beliefs)
        classify(x, +1);
}

void Simulation::classify(double x, int delta) noexcept
{
    if (x < cfg_.eps_stop)
        below_ += delta;
    if (x > 1.0 - cfg_.eps_stop)
        above_ += delta;
}

template<bool Record>
void Simulation::play_round()
{
    auto const focal = static_cast<Vertex>(rng_.below(graph_->size()));
    std::span<Vertex const> members{hood_members_.data() + hood_offsets_[focal],
                                    hood_offsets_[focal + 1]
                                        - hood_offsets_[focal]};
    for (Vertex v : members)
        classify(state_.beliefs[v], -1);

    if constexpr (Record)
    {
        outcome_.focal = focal;
        outcome_.participants.assign(members.begin(), members.end());
        outcome_.group_size = static_cast<int>(members.size());
        outcome_.actions.clear();
        outcome_.lambdas.clear();
        play_game(state_.beliefs, members, model_, cfg_.alpha, rng_,
                  contributed_, [&](Action a, double lambda) {
                      outcome_.actions.push_back(a);
                      outcome_.lambdas.push_back(lambda);
                  });
        outcome_.all_contributed
            = !outcome_.actions.empty()
              && std::all_of(outcome_.actions.begin(), outcome_.actions.end(),
                             [](Action a) { return a == Action::Contribute; });
    }
    else
    {
        play_game(state_.beliefs, members, model_, cfg_.alpha, rng_,
                  contributed_, [](Action, double) {});
    }

    for (Vertex v : members)
        classify(state_.beliefs[v], +1);
    ++state_.round;
}

RoundOutcome const& Simulation::step()
{
    play_round<true>();
    return outcome_;
}

void Simulation::advance()
{
    play_round<false>();
}

Convergence Simulation::convergence() const noexcept
{
    auto const n = state_.beliefs.size();
    if (below_ == n)
        return Convergence::DefectCorner;
    if (above_ == n)
        return Convergence::ContributeCorner;
    return Convergence::None;
}

double Simulation::total_belief() const noexcept
{
    return std::accumulate(state_.beliefs.begin(), state_.beliefs.end(), 0.0);
}

RunResult Simulation::run()
{
    if (!is_connected(*graph_))
    {
        std::clog << "warning: running on a disconnected graph; corner "
                     "convergence is not guaranteed\n";
    }
    RunResult result;
    auto const stride = cfg_.record_stride;
    auto record = [&] {
        result.total_belief_series.push_back({state_.round, total_belief()});
    };
    if (stride > 0)
        record();

    while (true)
    {
        auto const c = convergence();
        if (c != Convergence::None)
        {
            result.converged = c == Convergence::DefectCorner
                                   ? Outcome::DefectCorner
                                   : Outcome::ContributeCorner;
            result.tau = state_.round;
            break;
        }
        if (state_.round >= cfg_.max_rounds)
            break;
        advance();
        if (stride > 0 && state_.round % stride == 0)
            record();
    }
    if (stride > 0 && result.total_belief_series.back().round != state_.round)
        record();
    result.rounds_executed = state_.round;
    result.final_beliefs = state_.beliefs;
    return result;
}

RunResult run(Graph const& g, SimConfig const& cfg)
{
    return Simulation(g, cfg).run();
}

std::uint64_t absorption_horizon(LearningRate alpha, double eps)
{
    if (!(eps > 0.0 && eps < 1.0))
    {
        throw std::invalid_argument("eps must lie in (0, 1), got "
                                    + std::to_string(eps));
    }
    return static_cast<std::uint64_t>(
        std::ceil(std::log(eps) / std::log(1.0 - alpha.value())));
}

double corner_epsilon_bound(Graph const& g, LearningRate alpha)
{
    std::size_t max_degree = 0;
    for (Vertex v = 0; v < g.size(); ++v)
        max_degree = std::max(max_degree, g.degree(v));
    if (max_degree < 2)
    {
        throw std::invalid_argument(
            "corner epsilon bound needs maximum degree >= 2, got "
            + std::to_string(max_degree));
    }
    return alpha.value() / static_cast<double>(max_degree - 1);
}

}  // namespace aonpg
