#include "lexiplan/quantile_planner.hpp"

#include <chrono>
#include <cmath>
#include <utility>

namespace lexiplan {

void validate_objective(const QuantileObjective& objective) {
    if (objective.taus.empty()) {
        throw ArgumentError("objective must contain at least one tau");
    }
    double prev = 0.0;
    for (double tau : objective.taus) {
        if (!std::isfinite(tau) || !(tau > 0.0 && tau <= 1.0)) {
            throw ArgumentError("TauOutOfRange: taus must lie in (0, 1], got " +
                                format_double(tau));
        }
        if (!(tau > prev)) {
            throw ArgumentError("taus must be strictly increasing");
        }
        prev = tau;
    }
}

std::vector<double> build_quantile_reward(const ValidatedInstance& vinst, int rank) {
    const MdpInstance& m = vinst.instance();
    const int n = m.num_end_states();
    if (rank < 1 || rank > n) {
        throw ArgumentError("build_quantile_reward: RankOutOfRange (" + std::to_string(rank) +
                            " of " + std::to_string(n) + ")");
    }
    std::vector<double> reward(
        static_cast<std::size_t>(m.num_states) * m.num_actions * m.num_states, 0.0);
    for (int s = 0; s < m.num_states; ++s) {
        if (vinst.is_end(s)) continue;
        for (int to = 0; to < m.num_states; ++to) {
            if (vinst.rank_of(to) < rank) continue;  // non-end states carry rank 0
            for (int a = 0; a < m.num_actions; ++a) {
                reward[m.transition_index(s, a, to)] = 1.0;
            }
        }
    }
    return reward;
}

RewardSpec build_locked_rewards(const ValidatedInstance& vinst, std::span<const int> ranks) {
    const MdpInstance& m = vinst.instance();
    RewardSpec spec;
    spec.levels.reserve(ranks.size());
    for (int rank : ranks) {
        if (rank == 0) {
            spec.levels.push_back(std::vector<double>(
                static_cast<std::size_t>(m.num_states) * m.num_actions * m.num_states, 0.0));
        } else {
            spec.levels.push_back(build_quantile_reward(vinst, rank));
        }
    }
    return spec;
}

double probe(const ValidatedInstance& vinst, std::span<const int> locked_ranks, int candidate,
             double eps) {
    const MdpInstance& m = vinst.instance();
    std::vector<int> ranks(locked_ranks.begin(), locked_ranks.end());
    ranks.push_back(candidate);  // range-checked by build_quantile_reward
    const RewardSpec spec = build_locked_rewards(vinst, ranks);
    const LexSolution sol = solve_lexicographic(vinst, spec, eps);

    const int level = static_cast<int>(ranks.size()) - 1;
    double value = 0;
    for (int s = 0; s < m.num_states; ++s) {
        value += m.initial_distribution[s] * sol.values.at(level, 0, s);
    }
    return value;
}

namespace {

int ceil_log2(int x) {
    int bits = 0;
    for (int v = x - 1; v > 0; v >>= 1) ++bits;
    return bits;
}

}  // namespace

QuantileSolveReport solve_multi_quantile(const ValidatedInstance& vinst,
                                         const QuantileObjective& objective, double eps) {
    validate_objective(objective);
    const auto start = std::chrono::steady_clock::now();
    const MdpInstance& m = vinst.instance();
    const int n = m.num_end_states();
    const int probe_budget = ceil_log2(n + 1) + 1;

    QuantileSolveReport report;
    for (double tau : objective.taus) {
        // Bracket over outcome ranks r with cdf*(r) = min achievable CDF at r
        // over the policies surviving the locked levels: cdf*(lo) < tau and
        // cdf*(hi) >= tau throughout. Anchors: cdf* below rank 0 is 0, and
        // cdf*(n) = 1. Ranks below the previous level's optimum are
        // unreachable, so the bracket starts just under it.
        int lo = report.optimal_ranks.empty() ? -1 : report.optimal_ranks.back() - 1;
        int hi = n;
        std::vector<std::pair<int, double>> seen = {{-1, 0.0}, {n, 1.0}};
        std::vector<ProbeRecord> trace;

        while (hi - lo > 1) {
            const int mid = (lo + hi + 1) / 2;
            const int candidate = mid + 1;  // indicator threshold measuring cdf*(mid)
            const double value = probe(vinst, report.optimal_ranks, candidate, eps);
            const double cdf_mid = 1.0 - value;

            if (!(value >= -kDefaultEps && value <= 1.0 + kDefaultEps)) {
                throw InvariantError("mqo bisection: probe value " + format_double(value) +
                                     " outside [0, 1]");
            }
            for (const auto& [rank, known] : seen) {
                const bool bad = (rank <= mid && known > cdf_mid + kDefaultEps) ||
                                 (rank >= mid && known < cdf_mid - kDefaultEps);
                if (bad) {
                    throw InvariantError(
                        "mqo bisection: minimal CDF not monotone across probed ranks");
                }
            }
            seen.emplace_back(mid, cdf_mid);

            const bool move_upper = cdf_mid >= tau - kQuantileSlack;
            trace.push_back({candidate, value, move_upper});
            if (move_upper) {
                hi = mid;
            } else {
                lo = mid;
            }
        }

        if (static_cast<int>(trace.size()) > probe_budget) {
            throw InvariantError("mqo bisection: probe budget exceeded");
        }
        report.optimal_ranks.push_back(hi);
        report.probe_counts.push_back(static_cast<int>(trace.size()));
        report.probe_trace.push_back(std::move(trace));
    }

    for (std::size_t k = 1; k < report.optimal_ranks.size(); ++k) {
        if (report.optimal_ranks[k] < report.optimal_ranks[k - 1]) {
            throw InvariantError("mqo: optimal ranks not monotone");
        }
    }

    const RewardSpec locked = build_locked_rewards(vinst, report.optimal_ranks);
    const LexSolution sol = solve_lexicographic(vinst, locked, eps);
    report.final_policy = sol.policy;
    report.final_values.assign(objective.num_levels(), 0.0);
    for (int i = 0; i < objective.num_levels(); ++i) {
        double v = 0;
        for (int s = 0; s < m.num_states; ++s) {
            v += m.initial_distribution[s] * sol.values.at(i, 0, s);
        }
        report.final_values[i] = v;
    }

    report.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace lexiplan
