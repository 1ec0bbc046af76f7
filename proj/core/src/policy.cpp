#include "lexiplan/policy.hpp"

#include <cmath>

namespace lexiplan {

void check_policy(const ValidatedInstance& vinst, const PolicyTable& policy) {
    const MdpInstance& m = vinst.instance();
    if (policy.horizon != m.horizon || policy.num_states != m.num_states ||
        policy.actions.size() != static_cast<std::size_t>(m.horizon) * m.num_states) {
        throw DimensionError("policy table shape does not match instance");
    }
    for (int a : policy.actions) {
        if (a < 0 || a >= m.num_actions) {
            throw DimensionError("policy action index " + std::to_string(a) + " out of range");
        }
    }
}

EndDistribution propagate(const ValidatedInstance& vinst, const PolicyTable& policy) {
    const MdpInstance& m = vinst.instance();
    check_policy(vinst, policy);

    std::vector<double> dist = m.initial_distribution;
    std::vector<double> next(m.num_states);
    for (int t = 0; t < m.horizon; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int s = 0; s < m.num_states; ++s) {
            const double p = dist[s];
            if (p == 0.0) continue;
            const int a = policy.action(t, s);
            for (int to = 0; to < m.num_states; ++to) {
                next[to] += p * m.transition(s, a, to);
            }
        }
        dist.swap(next);
    }

    EndDistribution out;
    out.mass.assign(vinst.num_ranks(), 0.0);
    for (int s = 0; s < m.num_states; ++s) {
        out.mass[vinst.rank_of(s)] += dist[s];  // rank 0 collects the timeout mass
    }
    return out;
}

double cdf(const EndDistribution& dist, int rank) {
    if (rank < 0 || rank >= dist.num_ranks()) {
        throw ArgumentError("cdf: RankOutOfRange (" + std::to_string(rank) + ")");
    }
    double sum = 0;
    for (int k = 0; k <= rank; ++k) sum += dist.mass[k];
    return sum;
}

int lower_quantile(const EndDistribution& dist, double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) {
        throw ArgumentError("lower_quantile: TauOutOfRange (" + format_double(tau) + ")");
    }
    double sum = 0;
    const int top = dist.num_ranks() - 1;
    for (int rank = 0; rank < top; ++rank) {
        sum += dist.mass[rank];
        if (sum >= tau - kQuantileSlack) return rank;
    }
    return top;  // F reaches 1 at the top rank
}

std::vector<std::vector<double>> evaluate_state_values(
    const ValidatedInstance& vinst, std::span<const std::vector<double>> reward_tables,
    const PolicyTable& policy) {
    const MdpInstance& m = vinst.instance();
    check_policy(vinst, policy);

    std::vector<std::vector<double>> result;
    result.reserve(reward_tables.size());
    std::vector<double> next(m.num_states);
    for (const std::vector<double>& table : reward_tables) {
        std::vector<double> values(m.num_states, 0.0);  // terminal slice
        for (int t = m.horizon - 1; t >= 0; --t) {
            for (int s = 0; s < m.num_states; ++s) {
                const int a = policy.action(t, s);
                double v = table[static_cast<std::size_t>(s) * m.num_actions + a];
                for (int to = 0; to < m.num_states; ++to) {
                    v += m.transition(s, a, to) * values[to];
                }
                next[s] = v;
            }
            values.swap(next);
        }
        result.push_back(std::move(values));
    }
    return result;
}

std::vector<std::vector<double>> evaluate_state_values(const ValidatedInstance& vinst,
                                                       const RewardSpec& rewards,
                                                       const PolicyTable& policy) {
    const auto tables = marginalize_rewards(vinst, rewards);
    return evaluate_state_values(vinst, tables, policy);
}

ValueVector evaluate_values(const ValidatedInstance& vinst, const RewardSpec& rewards,
                            const PolicyTable& policy) {
    const MdpInstance& m = vinst.instance();
    const auto per_state = evaluate_state_values(vinst, rewards, policy);
    ValueVector out(per_state.size(), 0.0);
    for (std::size_t i = 0; i < per_state.size(); ++i) {
        double v = 0;
        for (int s = 0; s < m.num_states; ++s) {
            v += m.initial_distribution[s] * per_state[i][s];
        }
        out[i] = v;
    }
    return out;
}

}  // namespace lexiplan
