#include "aonpg/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aonpg {

const char* to_string(Action a) noexcept
{
    return a == Action::Contribute ? "contribute" : "defect";
}

LearningRate::LearningRate(double value) : value_(value)
{
    if (!(value > 0.0 && value < 1.0))
    {
        throw std::invalid_argument("learning rate must lie in (0, 1), got "
                                    + std::to_string(value));
    }
}

PayoffModel::PayoffModel(double exponent) : exponent_(exponent)
{
    if (!(exponent > 0.0) || !std::isfinite(exponent))
    {
        throw std::invalid_argument(
            "payoff exponent m must be a positive finite number, got "
            + std::to_string(exponent));
    }
}

double PayoffModel::cdf(double y) const noexcept
{
    if (y <= 0.0)
        return 0.0;
    if (y >= 1.0)
        return 1.0;
    return std::pow(y, 1.0 / exponent_);
}

double PayoffModel::sample_lambda(Rng& rng) const noexcept
{
    return std::pow(rng.uniform_positive(), -exponent_);
}

double others_all_contribute(double belief, int group_size) noexcept
{
    double p = 1.0;
    for (int i = 1; i < group_size; ++i)
    {
        p *= belief;
    }
    return p;
}

namespace {
void require_group(int group_size)
{
    if (group_size < 2)
    {
        throw std::invalid_argument("group size must be at least 2, got "
                                    + std::to_string(group_size));
    }
}
}  // namespace

Action decide_action(double belief, int group_size, double lambda)
{
    require_group(group_size);
    return others_all_contribute(belief, group_size) * lambda >= 1.0
               ? Action::Contribute
               : Action::Defect;
}

double contribute_probability(double belief, int group_size,
                              PayoffModel const& model)
{
    require_group(group_size);
    if (belief <= 0.0)
        return 0.0;
    // F(x^(k-1)) = x^((k-1)/m); one pow keeps m = k-1 exact.
    return std::min(
        1.0, std::pow(belief, static_cast<double>(group_size - 1)
                                  / model.exponent()));
}

ExpectedUtilities expected_utilities(double belief, int group_size,
                                     double lambda)
{
    require_group(group_size);
    return {lambda * others_all_contribute(belief, group_size), 1.0};
}

double update_belief(double belief, LearningRate alpha,
                     int contributors_among_others, int group_size)
{
    require_group(group_size);
    if (contributors_among_others < 0
        || contributors_among_others > group_size - 1)
    {
        throw std::invalid_argument(
            "contributor count " + std::to_string(contributors_among_others)
            + " outside [0, " + std::to_string(group_size - 1) + "]");
    }
    double const a = alpha.value();
    double const observed = static_cast<double>(contributors_among_others)
                            / static_cast<double>(group_size - 1);
    // Equal to x(1-a) + a*observed; this form leaves 0 and 1 bitwise fixed.
    return std::clamp(belief + a * (observed - belief), 0.0, 1.0);
}

double payoff(Action action, bool all_contributed, double lambda) noexcept
{
    if (action == Action::Defect)
        return 1.0;
    return all_contributed ? lambda : 0.0;
}

}  // namespace aonpg
