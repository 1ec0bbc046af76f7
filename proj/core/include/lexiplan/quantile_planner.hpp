#pragma once

#include <span>
#include <vector>

#include "lexiplan/lex_solver.hpp"

namespace lexiplan {

// Strictly increasing quantile levels, each in (0, 1].
struct QuantileObjective {
    std::vector<double> taus;

    int num_levels() const { return static_cast<int>(taus.size()); }
};

void validate_objective(const QuantileObjective& objective);

// Indicator reward tensor: 1 on every transition from a non-end state into an
// end state of preference rank >= rank, 0 elsewhere. Requires 1 <= rank <= n.
// Under any policy its expected total equals the mass on outcomes ranked
// >= rank, i.e. one minus the CDF at rank - 1.
std::vector<double> build_quantile_reward(const ValidatedInstance& instance, int rank);

// One indicator level per decided rank. Rank 0 (timeout) constrains nothing
// and becomes an all-zero level, which keeps the action filtration a no-op.
RewardSpec build_locked_rewards(const ValidatedInstance& instance, std::span<const int> ranks);

// Best achievable mass on outcomes ranked >= candidate over the policies
// surviving the locked higher-priority levels: stacks the locked indicator
// levels plus the candidate's, solves lexicographically, and reads the last
// level's value at the initial distribution.
double probe(const ValidatedInstance& instance, std::span<const int> locked_ranks, int candidate,
             double eps = kDefaultEps);

struct ProbeRecord {
    int candidate = 0;         // rank handed to probe
    double value = 0;          // probe result
    bool moved_upper = false;  // true when the probe moved the upper bracket end
};

struct QuantileSolveReport {
    std::vector<int> optimal_ranks;                   // one per tau, nondecreasing
    PolicyTable final_policy;
    ValueVector final_values;                         // under the fully locked rewards
    std::vector<std::vector<ProbeRecord>> probe_trace;
    std::vector<int> probe_counts;                    // lexicographic solves per level
    double solve_seconds = 0;
};

// For each quantile level in turn, bisects over outcome ranks to find the
// best achievable lower quantile, locking each level's indicator reward
// before moving to the next; finishes with one lexicographic solve under the
// fully locked reward stack.
QuantileSolveReport solve_multi_quantile(const ValidatedInstance& instance,
                                         const QuantileObjective& objective,
                                         double eps = kDefaultEps);

}  // namespace lexiplan
