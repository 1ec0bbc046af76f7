#include "lexiplan/lex_solver.hpp"

#include <limits>

namespace lexiplan {

bool ActionMask::subset_of(const ActionMask& other) const {
    if (num_states_ != other.num_states_ || num_actions_ != other.num_actions_) return false;
    for (std::size_t i = 0; i < allow_.size(); ++i) {
        if (allow_[i] && !other.allow_[i]) return false;
    }
    return true;
}

BackupResult restricted_backup(const ValidatedInstance& vinst, std::span<const double> reward_sa,
                               std::span<const double> next_values, const ActionMask& allowed,
                               double eps) {
    const MdpInstance& m = vinst.instance();
    if (reward_sa.size() != static_cast<std::size_t>(m.num_states) * m.num_actions ||
        next_values.size() != static_cast<std::size_t>(m.num_states) ||
        allowed.num_states() != m.num_states || allowed.num_actions() != m.num_actions) {
        throw DimensionError("restricted_backup: shapes do not match instance");
    }
    if (!(eps >= 0)) {
        throw ArgumentError("restricted_backup: eps must be >= 0");
    }

    BackupResult out;
    out.values.assign(m.num_states, 0.0);
    out.survivors = ActionMask(m.num_states, m.num_actions, false);

    std::vector<double> q(m.num_actions);
    for (int s = 0; s < m.num_states; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        bool any = false;
        for (int a = 0; a < m.num_actions; ++a) {
            if (!allowed.contains(s, a)) continue;
            double value = reward_sa[static_cast<std::size_t>(s) * m.num_actions + a];
            for (int to = 0; to < m.num_states; ++to) {
                value += m.transition(s, a, to) * next_values[to];
            }
            q[a] = value;
            if (value > best) best = value;
            any = true;
        }
        if (!any) {
            throw InvariantError("restricted_backup: EmptyActionSet at state " + std::to_string(s));
        }
        out.values[s] = best;
        for (int a = 0; a < m.num_actions; ++a) {
            if (allowed.contains(s, a) && q[a] >= best - eps) {
                out.survivors.set(s, a, true);
            }
        }
    }
    return out;
}

LexSolution solve_lexicographic(const ValidatedInstance& vinst, const RewardSpec& rewards,
                                double eps) {
    const MdpInstance& m = vinst.instance();
    const int num_levels = rewards.num_levels();
    if (num_levels < 1) {
        throw ArgumentError("solve_lexicographic: at least one reward level is required");
    }
    const auto reward_tables = marginalize_rewards(vinst, rewards);  // also validates

    LexSolution sol;
    sol.values = ValueTensor(num_levels, m.horizon, m.num_states);
    sol.filtration = ActionFiltration(num_levels, m.horizon, m.num_states, m.num_actions);
    sol.policy = PolicyTable::zeros(m.horizon, m.num_states);

    for (int t = m.horizon - 1; t >= 0; --t) {
        ActionMask allowed(m.num_states, m.num_actions, true);
        sol.filtration.sets(t, 0) = allowed;
        for (int i = 0; i < num_levels; ++i) {
            BackupResult backup =
                restricted_backup(vinst, reward_tables[i], sol.values.slice(i, t + 1), allowed, eps);
            for (int s = 0; s < m.num_states; ++s) {
                sol.values.at(i, t, s) = backup.values[s];
            }
            allowed = std::move(backup.survivors);
            sol.filtration.sets(t, i + 1) = allowed;
        }
        for (int s = 0; s < m.num_states; ++s) {
            const int a = allowed.first_allowed(s);
            if (a < 0) {
                throw InvariantError("solve_lexicographic: empty final action set");
            }
            sol.policy.action(t, s) = a;
        }
    }
    return sol;
}

}  // namespace lexiplan
