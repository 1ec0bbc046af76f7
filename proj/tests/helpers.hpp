#pragma once

#include <random>
#include <vector>

#include "lexiplan/generators.hpp"
#include "lexiplan/mdp.hpp"
#include "lexiplan/policy.hpp"

namespace test_helpers {

using namespace lexiplan;

// One decision state s0 with a forced choice: action 0 reaches the least
// preferred end state, action 1 the most preferred. States: s0=0, e1=1, e2=2.
inline MdpInstance two_action_instance() {
    MdpInstance m;
    m.name = "two-action";
    m.num_states = 3;
    m.num_actions = 2;
    m.horizon = 1;
    m.end_states = {1, 2};
    m.initial_distribution = {1.0, 0.0, 0.0};
    m.transitions.assign(3 * 2 * 3, 0.0);
    m.transition(0, 0, 1) = 1.0;
    m.transition(0, 1, 2) = 1.0;
    for (int e : {1, 2}) {
        for (int a = 0; a < 2; ++a) m.transition(e, a, e) = 1.0;
    }
    return m;
}

// A single decision state that self-loops under every action; the lone end
// state is unreachable, so every policy times out with probability 1.
inline MdpInstance all_timeout_instance() {
    MdpInstance m;
    m.name = "all-timeout";
    m.num_states = 2;
    m.num_actions = 2;
    m.horizon = 2;
    m.end_states = {1};
    m.initial_distribution = {1.0, 0.0};
    m.transitions.assign(2 * 2 * 2, 0.0);
    for (int a = 0; a < 2; ++a) {
        m.transition(0, a, 0) = 1.0;
        m.transition(1, a, 1) = 1.0;
    }
    return m;
}

// Both actions reach an end state with probability one; action 0 splits
// mass evenly, so F(e_1) = 0.5 exactly under it.
inline MdpInstance boundary_instance() {
    MdpInstance m;
    m.name = "boundary-tau";
    m.num_states = 3;
    m.num_actions = 2;
    m.horizon = 1;
    m.end_states = {1, 2};
    m.initial_distribution = {1.0, 0.0, 0.0};
    m.transitions.assign(3 * 2 * 3, 0.0);
    m.transition(0, 0, 1) = 0.5;
    m.transition(0, 0, 2) = 0.5;
    m.transition(0, 1, 1) = 0.75;
    m.transition(0, 1, 2) = 0.25;
    for (int e : {1, 2}) {
        for (int a = 0; a < 2; ++a) m.transition(e, a, e) = 1.0;
    }
    return m;
}

inline ValidatedInstance random_instance(int states, int actions, int horizon, int ends,
                                         std::uint64_t seed, double density = 1.0) {
    RandomInstanceParams params;
    params.num_states = states;
    params.num_actions = actions;
    params.horizon = horizon;
    params.num_end_states = ends;
    params.density = density;
    return validate(generate_random(params, seed).instance);
}

inline PolicyTable random_policy(const ValidatedInstance& vinst, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PolicyTable policy = PolicyTable::zeros(vinst->horizon, vinst->num_states);
    for (int& a : policy.actions) {
        a = static_cast<int>(rng() % vinst->num_actions);
    }
    return policy;
}

// Random {0,1} rewards on transitions leaving non-end states.
inline RewardSpec random_rewards(const ValidatedInstance& vinst, int levels, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const MdpInstance& m = vinst.instance();
    RewardSpec spec;
    for (int i = 0; i < levels; ++i) {
        std::vector<double> dense(m.transitions.size(), 0.0);
        for (int s = 0; s < m.num_states; ++s) {
            if (vinst.is_end(s)) continue;
            for (int a = 0; a < m.num_actions; ++a) {
                for (int to = 0; to < m.num_states; ++to) {
                    if (rng() & 1) dense[m.transition_index(s, a, to)] = 1.0;
                }
            }
        }
        spec.levels.push_back(std::move(dense));
    }
    return spec;
}

// Plain single-objective backward induction, written independently of the
// solver but with the same summation order so values can be compared exactly.
inline std::vector<std::vector<double>> plain_backward_induction(
    const ValidatedInstance& vinst, const std::vector<double>& reward_sa) {
    const MdpInstance& m = vinst.instance();
    std::vector<std::vector<double>> values(m.horizon + 1,
                                            std::vector<double>(m.num_states, 0.0));
    for (int t = m.horizon - 1; t >= 0; --t) {
        for (int s = 0; s < m.num_states; ++s) {
            double best = -1e300;
            for (int a = 0; a < m.num_actions; ++a) {
                double q = reward_sa[static_cast<std::size_t>(s) * m.num_actions + a];
                for (int to = 0; to < m.num_states; ++to) {
                    q += m.transition(s, a, to) * values[t + 1][to];
                }
                if (q > best) best = q;
            }
            values[t][s] = best;
        }
    }
    return values;
}

}  // namespace test_helpers
