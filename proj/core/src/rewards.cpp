#include "lexiplan/rewards.hpp"

#include <cmath>

namespace lexiplan {

RewardSpec zero_rewards(const MdpInstance& instance, int num_levels) {
    const std::size_t size =
        static_cast<std::size_t>(instance.num_states) * instance.num_actions * instance.num_states;
    RewardSpec spec;
    spec.levels.assign(num_levels, std::vector<double>(size, 0.0));
    return spec;
}

ValidationReport check_rewards(const ValidatedInstance& vinst, const RewardSpec& rewards) {
    const MdpInstance& m = vinst.instance();
    ValidationReport report;
    const std::size_t want =
        static_cast<std::size_t>(m.num_states) * m.num_actions * m.num_states;

    for (int i = 0; i < rewards.num_levels(); ++i) {
        const std::vector<double>& level = rewards.levels[i];
        if (level.size() != want) {
            report.violations.push_back({ViolationKind::BadShape, -1, -1, 0,
                                         "reward level " + std::to_string(i) + " has " +
                                             std::to_string(level.size()) + " entries, expected " +
                                             std::to_string(want)});
            continue;
        }
        for (double r : level) {
            if (!std::isfinite(r)) {
                report.violations.push_back({ViolationKind::NonFiniteReward, -1, -1, r,
                                             "reward level " + std::to_string(i)});
                break;
            }
        }
        for (int e : m.end_states) {
            for (int a = 0; a < m.num_actions; ++a) {
                const double r = level[m.transition_index(e, a, e)];
                if (r != 0.0) {
                    report.violations.push_back({ViolationKind::EndStateRewardNotZero, e, a, r,
                                                 "reward level " + std::to_string(i)});
                }
            }
        }
    }
    return report;
}

void validate_rewards(const ValidatedInstance& vinst, const RewardSpec& rewards) {
    ValidationReport report = check_rewards(vinst, rewards);
    if (!report.ok()) {
        throw ValidationError(std::move(report));
    }
}

std::vector<std::vector<double>> marginalize_rewards(const ValidatedInstance& vinst,
                                                     const RewardSpec& rewards) {
    const MdpInstance& m = vinst.instance();
    validate_rewards(vinst, rewards);

    std::vector<std::vector<double>> tables;
    tables.reserve(rewards.levels.size());
    for (const std::vector<double>& level : rewards.levels) {
        std::vector<double> table(static_cast<std::size_t>(m.num_states) * m.num_actions, 0.0);
        for (int s = 0; s < m.num_states; ++s) {
            for (int a = 0; a < m.num_actions; ++a) {
                double expectation = 0;
                for (int next = 0; next < m.num_states; ++next) {
                    expectation += m.transition(s, a, next) * level[m.transition_index(s, a, next)];
                }
                table[static_cast<std::size_t>(s) * m.num_actions + a] = expectation;
            }
        }
        tables.push_back(std::move(table));
    }
    return tables;
}

}  // namespace lexiplan
