#pragma once

// Game mathematics of the all-or-nothing public goods game with
// exponential-moving-average beliefs. Everything here is a pure function of
// its arguments (plus an explicit Rng where sampling is involved).

#include <cstdint>

#include "aonpg/rng.hpp"

namespace aonpg {

enum class Action : std::uint8_t
{
    Contribute,
    Defect,
};

const char* to_string(Action a) noexcept;

//! Step size of the belief update, strictly inside (0, 1).
class LearningRate
{
  public:
    explicit LearningRate(double value);

    double value() const noexcept { return value_; }

  private:
    double value_;
};

//---------------------------------------------------------------------------//
/*!
 * Distribution of the private reward lambda.
 *
 * The reciprocal 1/lambda has CDF F(y) = y^(1/m) on [0, 1], so lambda >= 1
 * and P(lambda > z) = z^(-1/m).
 */
class PayoffModel
{
  public:
    explicit PayoffModel(double exponent = 4.0);

    double exponent() const noexcept { return exponent_; }

    //! F(y) = y^(1/m), clamped to [0,1] outside the support.
    double cdf(double y) const noexcept;

    //! lambda = u^(-m), u ~ Uniform(0, 1) with u = 0 redrawn.
    double sample_lambda(Rng& rng) const noexcept;

  private:
    double exponent_;
};

struct ExpectedUtilities
{
    double contribute;
    double defect;
};

//! x^(k-1) by repeated multiplication; shared by the decision and utilities.
double others_all_contribute(double belief, int group_size) noexcept;

//! Contribute iff belief^(k-1) * lambda >= 1. Throws for k < 2.
Action decide_action(double belief, int group_size, double lambda);

//! Probability an outside observer assigns to contribution: F(x^(k-1)).
double contribute_probability(double belief, int group_size,
                              PayoffModel const& model);

ExpectedUtilities expected_utilities(double belief, int group_size,
                                     double lambda);

/*!
 * Exponential moving average update after one round:
 * x <- (1 - alpha) x + alpha * (contributors among the other k-1) / (k-1).
 *
 * The result is clamped to [0, 1] to absorb rounding. Throws
 * std::invalid_argument when the contributor count is outside [0, k-1].
 */
double update_belief(double belief, LearningRate alpha,
                     int contributors_among_others, int group_size);

//! Defect pays 1; Contribute pays lambda if everyone contributed, else 0.
double payoff(Action action, bool all_contributed, double lambda) noexcept;

}  // namespace aonpg
