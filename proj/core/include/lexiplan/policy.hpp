#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lexiplan/mdp.hpp"
#include "lexiplan/rewards.hpp"

namespace lexiplan {

// Nonstationary deterministic Markov policy: one action per (epoch, state).
struct PolicyTable {
    int horizon = 0;
    int num_states = 0;
    std::vector<int> actions;  // row-major horizon x |S|

    int action(int t, int s) const {
        return actions[static_cast<std::size_t>(t) * num_states + s];
    }
    int& action(int t, int s) {
        return actions[static_cast<std::size_t>(t) * num_states + s];
    }

    static PolicyTable zeros(int horizon, int num_states) {
        return {horizon, num_states,
                std::vector<int>(static_cast<std::size_t>(horizon) * num_states, 0)};
    }

    bool operator==(const PolicyTable&) const = default;
};

// Throws DimensionError unless the policy matches the instance and every
// entry names a valid action.
void check_policy(const ValidatedInstance& instance, const PolicyTable& policy);

// Probability mass over outcomes at the horizon: index 0 is the timeout
// outcome, index k >= 1 is the k-th end state in preference order.
struct EndDistribution {
    std::vector<double> mass;

    int num_ranks() const { return static_cast<int>(mass.size()); }
};

// Pushes the initial distribution forward through P under the policy for all
// horizon steps. Residual mass outside the end states becomes timeout mass.
EndDistribution propagate(const ValidatedInstance& instance, const PolicyTable& policy);

// F(rank) = sum of mass on outcomes ranked <= rank.
double cdf(const EndDistribution& dist, int rank);

// Minimal rank whose CDF reaches tau (within kQuantileSlack); tau in (0, 1].
int lower_quantile(const EndDistribution& dist, double tau);

// Per-state policy value at t = 0, one |S| row per reward level, computed by
// backward accumulation of expected one-step rewards.
std::vector<std::vector<double>> evaluate_state_values(const ValidatedInstance& instance,
                                                       const RewardSpec& rewards,
                                                       const PolicyTable& policy);

// Same, but from pre-marginalized |S| x |A| expected-reward tables.
std::vector<std::vector<double>> evaluate_state_values(
    const ValidatedInstance& instance, std::span<const std::vector<double>> reward_tables,
    const PolicyTable& policy);

// Policy value vector at the initial distribution.
ValueVector evaluate_values(const ValidatedInstance& instance, const RewardSpec& rewards,
                            const PolicyTable& policy);

}  // namespace lexiplan
