#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lexiplan/policy.hpp"

namespace lexiplan {

// Per-state admissible action sets at one decision epoch.
class ActionMask {
public:
    ActionMask() = default;
    ActionMask(int num_states, int num_actions, bool allow_all)
        : num_states_(num_states),
          num_actions_(num_actions),
          allow_(static_cast<std::size_t>(num_states) * num_actions, allow_all ? 1 : 0) {}

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }

    bool contains(int s, int a) const { return allow_[index(s, a)] != 0; }
    void set(int s, int a, bool allowed) { allow_[index(s, a)] = allowed ? 1 : 0; }

    // Lowest admissible action index, or -1 when the set is empty.
    int first_allowed(int s) const {
        for (int a = 0; a < num_actions_; ++a) {
            if (contains(s, a)) return a;
        }
        return -1;
    }
    int count_allowed(int s) const {
        int n = 0;
        for (int a = 0; a < num_actions_; ++a) n += contains(s, a);
        return n;
    }
    std::vector<int> allowed_actions(int s) const {
        std::vector<int> out;
        for (int a = 0; a < num_actions_; ++a) {
            if (contains(s, a)) out.push_back(a);
        }
        return out;
    }

    // True when other admits every action this mask admits, state by state.
    bool subset_of(const ActionMask& other) const;

private:
    std::size_t index(int s, int a) const {
        return static_cast<std::size_t>(s) * num_actions_ + a;
    }

    int num_states_ = 0;
    int num_actions_ = 0;
    std::vector<std::uint8_t> allow_;
};

// V_{i,t}(s) for every level i, epoch t in 0..T, state s. The terminal slice
// t = T is identically zero.
class ValueTensor {
public:
    ValueTensor() = default;
    ValueTensor(int num_levels, int horizon, int num_states)
        : num_levels_(num_levels),
          horizon_(horizon),
          num_states_(num_states),
          values_(static_cast<std::size_t>(num_levels) * (horizon + 1) * num_states, 0.0) {}

    int num_levels() const { return num_levels_; }
    int horizon() const { return horizon_; }
    int num_states() const { return num_states_; }

    double at(int level, int t, int s) const { return values_[index(level, t, s)]; }
    double& at(int level, int t, int s) { return values_[index(level, t, s)]; }

    std::span<const double> slice(int level, int t) const {
        return {values_.data() + index(level, t, 0), static_cast<std::size_t>(num_states_)};
    }

private:
    std::size_t index(int level, int t, int s) const {
        return (static_cast<std::size_t>(level) * (horizon_ + 1) + t) * num_states_ + s;
    }

    int num_levels_ = 0;
    int horizon_ = 0;
    int num_states_ = 0;
    std::vector<double> values_;
};

// Nested admissible-action sets per epoch. Depth 0 is the full action set;
// depth d is what survives the argmax filters of the first d reward levels.
class ActionFiltration {
public:
    ActionFiltration() = default;
    ActionFiltration(int num_levels, int horizon, int num_states, int num_actions)
        : num_levels_(num_levels),
          horizon_(horizon),
          masks_(static_cast<std::size_t>(horizon) * (num_levels + 1),
                 ActionMask(num_states, num_actions, false)) {}

    int num_levels() const { return num_levels_; }
    int horizon() const { return horizon_; }

    const ActionMask& sets(int t, int depth) const { return masks_[index(t, depth)]; }
    ActionMask& sets(int t, int depth) { return masks_[index(t, depth)]; }

private:
    std::size_t index(int t, int depth) const {
        return static_cast<std::size_t>(t) * (num_levels_ + 1) + depth;
    }

    int num_levels_ = 0;
    int horizon_ = 0;
    std::vector<ActionMask> masks_;
};

struct BackupResult {
    std::vector<double> values;  // max Q per state
    ActionMask survivors;        // actions within eps of the per-state max
};

// One restricted Bellman backup for a single reward level: per state,
// maximize Q(s,a) = R(s,a) + sum_{s'} P(s,a,s') V_next(s') over the allowed
// actions and keep every allowed action whose Q is within eps of the maximum.
BackupResult restricted_backup(const ValidatedInstance& instance,
                               std::span<const double> reward_sa,
                               std::span<const double> next_values, const ActionMask& allowed,
                               double eps);

struct LexSolution {
    PolicyTable policy;
    ValueTensor values;
    ActionFiltration filtration;
};

// Backward induction with lexicographically nested argmax filters. The
// returned deterministic Markov policy lexicographically dominates every
// other deterministic Markov policy at every state and epoch (up to eps);
// ties resolve to the lowest action index, so the output is reproducible.
LexSolution solve_lexicographic(const ValidatedInstance& instance, const RewardSpec& rewards,
                                double eps = kDefaultEps);

}  // namespace lexiplan
