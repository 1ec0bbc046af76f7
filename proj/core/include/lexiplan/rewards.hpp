#pragma once

#include <vector>

#include "lexiplan/mdp.hpp"

namespace lexiplan {

// One dense |S| x |A| x |S| per-transition reward table per priority level,
// level 0 carrying the highest priority. End states pay zero by construction:
// any level declaring a nonzero reward on an end-state self-loop is rejected.
struct RewardSpec {
    std::vector<std::vector<double>> levels;  // each row-major (s, a, s')

    int num_levels() const { return static_cast<int>(levels.size()); }
};

RewardSpec zero_rewards(const MdpInstance& instance, int num_levels);

// Shape, finiteness, and zero-reward-at-end-states checks.
ValidationReport check_rewards(const ValidatedInstance& instance, const RewardSpec& rewards);
void validate_rewards(const ValidatedInstance& instance, const RewardSpec& rewards);

// Expected one-step reward R_i(s,a) = sum_{s'} P(s,a,s') * R_i(s,a,s'),
// returned as one row-major |S| x |A| table per level.
std::vector<std::vector<double>> marginalize_rewards(const ValidatedInstance& instance,
                                                     const RewardSpec& rewards);

}  // namespace lexiplan
