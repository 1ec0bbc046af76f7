#include "lexiplan/oracle.hpp"

#include <cmath>
#include <string>

namespace lexiplan {

std::uint64_t policy_space_size(const MdpInstance& m, std::uint64_t budget) {
    const std::uint64_t base = static_cast<std::uint64_t>(m.num_actions);
    const std::uint64_t cells = static_cast<std::uint64_t>(m.num_states) * m.horizon;
    std::uint64_t count = 1;
    for (std::uint64_t i = 0; i < cells; ++i) {
        if (base != 0 && count > budget / base) {
            throw BudgetError("BudgetExceeded: |A|^(|S|*T) = " + std::to_string(m.num_actions) +
                                  "^" + std::to_string(cells) + " exceeds budget " +
                                  std::to_string(budget),
                              UINT64_MAX);
        }
        count *= base;
    }
    if (count > budget) {
        throw BudgetError("BudgetExceeded: " + std::to_string(count) + " policies exceed budget " +
                              std::to_string(budget),
                          count);
    }
    return count;
}

PolicyEnumeration::PolicyEnumeration(const ValidatedInstance& vinst, std::uint64_t budget)
    : instance_(&vinst), total_(policy_space_size(vinst.instance(), budget)) {
    digits_.assign(static_cast<std::size_t>(vinst->num_states) * vinst->horizon, 0);
}

void PolicyEnumeration::reset() {
    std::fill(digits_.begin(), digits_.end(), 0);
    started_ = false;
    exhausted_ = false;
}

bool PolicyEnumeration::next(PolicyTable& out) {
    if (exhausted_) return false;
    const int num_actions = (*instance_)->num_actions;
    if (!started_) {
        started_ = true;
    } else {
        int pos = static_cast<int>(digits_.size()) - 1;
        while (pos >= 0) {
            if (++digits_[pos] < num_actions) break;
            digits_[pos] = 0;
            --pos;
        }
        if (pos < 0) {
            exhausted_ = true;
            return false;
        }
    }
    out.horizon = (*instance_)->horizon;
    out.num_states = (*instance_)->num_states;
    out.actions.assign(digits_.begin(), digits_.end());
    return true;
}

PolicyTable PolicyEnumeration::decode(std::uint64_t index) const {
    if (index >= total_) {
        throw ArgumentError("PolicyEnumeration::decode: index out of range");
    }
    const int num_actions = (*instance_)->num_actions;
    PolicyTable out = PolicyTable::zeros((*instance_)->horizon, (*instance_)->num_states);
    for (int pos = static_cast<int>(out.actions.size()) - 1; pos >= 0; --pos) {
        out.actions[pos] = static_cast<int>(index % num_actions);
        index /= num_actions;
    }
    return out;
}

LexOptimum brute_force_lex_optimal(const ValidatedInstance& vinst, const RewardSpec& rewards,
                                   double eps, std::uint64_t budget, bool collect_witnesses) {
    const MdpInstance& m = vinst.instance();
    const auto tables = marginalize_rewards(vinst, rewards);

    auto value_at_initial = [&](const PolicyTable& policy) {
        const auto per_state = evaluate_state_values(vinst, tables, policy);
        ValueVector v(per_state.size(), 0.0);
        for (std::size_t i = 0; i < per_state.size(); ++i) {
            for (int s = 0; s < m.num_states; ++s) {
                v[i] += m.initial_distribution[s] * per_state[i][s];
            }
        }
        return v;
    };

    PolicyEnumeration enumeration(vinst, budget);
    PolicyTable policy;
    LexOptimum out;
    bool first = true;
    while (enumeration.next(policy)) {
        ValueVector v = value_at_initial(policy);
        if (first || lex_compare(v, out.best, eps) == LexOrder::Greater) {
            out.best = std::move(v);
            first = false;
        }
    }

    if (collect_witnesses) {
        enumeration.reset();
        while (enumeration.next(policy)) {
            const ValueVector v = value_at_initial(policy);
            bool close = true;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (std::fabs(v[i] - out.best[i]) > eps) {
                    close = false;
                    break;
                }
            }
            if (close) out.witnesses.push_back(policy);
        }
    }
    return out;
}

std::vector<ValueVector> brute_force_lex_optimal_per_state(const ValidatedInstance& vinst,
                                                           const RewardSpec& rewards, double eps,
                                                           std::uint64_t budget) {
    const MdpInstance& m = vinst.instance();
    const auto tables = marginalize_rewards(vinst, rewards);
    const int num_levels = rewards.num_levels();

    PolicyEnumeration enumeration(vinst, budget);
    PolicyTable policy;
    std::vector<ValueVector> best(m.num_states);
    bool first = true;
    while (enumeration.next(policy)) {
        const auto per_state = evaluate_state_values(vinst, tables, policy);
        for (int s = 0; s < m.num_states; ++s) {
            if (first) {
                best[s].resize(num_levels);
                for (int i = 0; i < num_levels; ++i) best[s][i] = per_state[i][s];
                continue;
            }
            // lexicographic update without building a temporary vector
            for (int i = 0; i < num_levels; ++i) {
                const double d = per_state[i][s] - best[s][i];
                if (d > eps) {
                    for (int j = 0; j < num_levels; ++j) best[s][j] = per_state[j][s];
                    break;
                }
                if (d < -eps) break;
            }
        }
        first = false;
    }
    return best;
}

double brute_force_min_cdf(const ValidatedInstance& vinst, std::span<const PolicyTable> surviving,
                           int rank) {
    if (surviving.empty()) {
        throw ArgumentError("brute_force_min_cdf: EmptySet");
    }
    double best = 2.0;
    for (const PolicyTable& policy : surviving) {
        best = std::min(best, cdf(propagate(vinst, policy), rank));
    }
    return best;
}

double brute_force_min_cdf(const ValidatedInstance& vinst,
                           std::span<const std::uint64_t> surviving_codes, int rank,
                           std::uint64_t budget) {
    if (surviving_codes.empty()) {
        throw ArgumentError("brute_force_min_cdf: EmptySet");
    }
    PolicyEnumeration enumeration(vinst, budget);
    double best = 2.0;
    for (std::uint64_t code : surviving_codes) {
        best = std::min(best, cdf(propagate(vinst, enumeration.decode(code)), rank));
    }
    return best;
}

namespace {

// CDF strictly below the given rank; below rank 0 nothing can sit, so 0.
double cdf_below(const EndDistribution& dist, int rank) {
    return rank == 0 ? 0.0 : cdf(dist, rank - 1);
}

}  // namespace

SchemeResult brute_force_scheme(const ValidatedInstance& vinst, const QuantileObjective& objective,
                                SchemeVariant variant, double eps, std::uint64_t budget) {
    validate_objective(objective);
    PolicyEnumeration enumeration(vinst, budget);

    std::vector<std::uint64_t> current(enumeration.total_count());
    for (std::uint64_t i = 0; i < current.size(); ++i) current[i] = i;

    SchemeResult out;
    for (double tau : objective.taus) {
        // Best achievable lower quantile over the surviving set.
        int best_rank = 0;
        for (std::uint64_t code : current) {
            const EndDistribution dist = propagate(vinst, enumeration.decode(code));
            best_rank = std::max(best_rank, lower_quantile(dist, tau));
        }

        // Candidate pool for the CDF minimization step.
        std::vector<std::uint64_t> pool;
        if (variant == SchemeVariant::FilterThenMinimize) {
            for (std::uint64_t code : current) {
                const EndDistribution dist = propagate(vinst, enumeration.decode(code));
                if (lower_quantile(dist, tau) == best_rank) pool.push_back(code);
            }
        } else {
            pool = current;
        }
        if (pool.empty()) {
            throw InvariantError("brute_force_scheme: EmptySet candidate pool");
        }

        double min_cdf = 2.0;
        for (std::uint64_t code : pool) {
            const EndDistribution dist = propagate(vinst, enumeration.decode(code));
            min_cdf = std::min(min_cdf, cdf_below(dist, best_rank));
        }
        std::vector<std::uint64_t> survivors;
        for (std::uint64_t code : pool) {
            const EndDistribution dist = propagate(vinst, enumeration.decode(code));
            if (cdf_below(dist, best_rank) <= min_cdf + eps) survivors.push_back(code);
        }
        if (survivors.empty()) {
            throw InvariantError("brute_force_scheme: EmptySet survivor set");
        }

        out.ranks.push_back(best_rank);
        out.survivors.push_back(survivors);
        current = std::move(survivors);
    }
    return out;
}

}  // namespace lexiplan
