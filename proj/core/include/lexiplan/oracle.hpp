#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lexiplan/policy.hpp"
#include "lexiplan/quantile_planner.hpp"

namespace lexiplan {

// Brute-force reference implementations, kept deliberately naive so the
// optimized solvers can be checked against them on small instances.

inline constexpr std::uint64_t kDefaultPolicyBudget = 10'000'000;

// |A|^(|S| * T); throws BudgetError when it exceeds budget or overflows.
std::uint64_t policy_space_size(const MdpInstance& instance,
                                std::uint64_t budget = kDefaultPolicyBudget);

// Odometer over every deterministic Markov policy, in lexicographic order of
// the flattened (epoch, state) action table. Emits each policy exactly once.
class PolicyEnumeration {
public:
    explicit PolicyEnumeration(const ValidatedInstance& instance,
                               std::uint64_t budget = kDefaultPolicyBudget);

    std::uint64_t total_count() const { return total_; }

    // Fills out with the next policy; false once the space is exhausted.
    bool next(PolicyTable& out);
    void reset();

    // Policy at a given position of the enumeration order.
    PolicyTable decode(std::uint64_t index) const;

private:
    const ValidatedInstance* instance_;
    std::uint64_t total_;
    std::vector<int> digits_;
    bool started_ = false;
    bool exhausted_ = false;
};

struct LexOptimum {
    ValueVector best;
    std::vector<PolicyTable> witnesses;  // all policies within eps of best, per component
};

// Exhaustive lexicographic optimum at the initial distribution.
LexOptimum brute_force_lex_optimal(const ValidatedInstance& instance, const RewardSpec& rewards,
                                   double eps = kDefaultEps,
                                   std::uint64_t budget = kDefaultPolicyBudget,
                                   bool collect_witnesses = true);

// Exhaustive per-start-state lexicographic optima at t = 0.
std::vector<ValueVector> brute_force_lex_optimal_per_state(
    const ValidatedInstance& instance, const RewardSpec& rewards, double eps = kDefaultEps,
    std::uint64_t budget = kDefaultPolicyBudget);

// Minimum CDF at the given rank over an explicit policy set.
double brute_force_min_cdf(const ValidatedInstance& instance,
                           std::span<const PolicyTable> surviving, int rank);

// Minimum CDF at the given rank over policies named by enumeration position.
double brute_force_min_cdf(const ValidatedInstance& instance,
                           std::span<const std::uint64_t> surviving_codes, int rank,
                           std::uint64_t budget = kDefaultPolicyBudget);

enum class SchemeVariant {
    // Restrict to the quantile achievers first, then keep the minimizers of
    // the CDF just below the optimal quantile.
    FilterThenMinimize = 1,
    // Keep the minimizers of that CDF directly over the whole surviving set.
    MinimizeDirect = 2,
};

struct SchemeResult {
    std::vector<int> ranks;  // optimal quantile rank per level
    // survivors[i]: enumeration positions of the policies surviving the first
    // i + 1 objectives. The set before level 0 is all policies (implicit).
    std::vector<std::vector<std::uint64_t>> survivors;
};

// Runs the quantile-filtering iteration literally over explicit policy sets.
SchemeResult brute_force_scheme(const ValidatedInstance& instance,
                                const QuantileObjective& objective, SchemeVariant variant,
                                double eps = kDefaultEps,
                                std::uint64_t budget = kDefaultPolicyBudget);

}  // namespace lexiplan
