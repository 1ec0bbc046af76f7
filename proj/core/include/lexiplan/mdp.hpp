#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lexiplan/errors.hpp"

namespace lexiplan {

// Absolute tolerances shared across the toolkit. All quantities compared with
// them are probabilities or sums of probabilities.
inline constexpr double kRowSumTol = 1e-12;      // stochasticity of P rows and mu_0
inline constexpr double kMassTol = 1e-10;        // end-distribution conservation
inline constexpr double kQuantileSlack = 1e-12;  // slack on the ">= tau" boundary
inline constexpr double kDefaultEps = 1e-9;      // lexicographic / argmax ties

// Priority-ordered objective values, index 0 carrying the highest priority.
using ValueVector = std::vector<double>;

enum class LexOrder { Less, Equal, Greater };

// Compares two value vectors component by component in priority order; the
// first component pair differing by more than eps decides.
LexOrder lex_compare(const ValueVector& u, const ValueVector& v, double eps = kDefaultEps);

// Finite-horizon MDP with an ordered set of absorbing end states. State and
// action indices are dense, 0-based. end_states lists the modeled end states
// in strictly increasing preference; the timeout outcome ("horizon elapsed
// outside every end state") is virtual and ranked below all of them.
struct MdpInstance {
    int num_states = 0;
    int num_actions = 0;
    int horizon = 0;                           // decisions at t = 0 .. horizon-1
    std::vector<double> transitions;           // row-major |S| x |A| x |S|
    std::vector<int> end_states;               // increasing preference order
    std::vector<double> initial_distribution;  // length |S|
    std::string name;                          // label used by documents

    std::size_t transition_index(int s, int a, int next) const {
        return (static_cast<std::size_t>(s) * num_actions + a) * num_states + next;
    }
    double transition(int s, int a, int next) const {
        return transitions[transition_index(s, a, next)];
    }
    double& transition(int s, int a, int next) {
        return transitions[transition_index(s, a, next)];
    }
    int num_end_states() const { return static_cast<int>(end_states.size()); }
};

enum class ViolationKind {
    BadShape,
    BadHorizon,
    NonFiniteProbability,
    ProbabilityOutOfRange,
    RowNotStochastic,
    EndStateNotAbsorbing,
    BadInitialDistribution,
    IndexOutOfRange,
    DuplicateEndState,
    NonFiniteReward,
    EndStateRewardNotZero,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int state = -1;   // -1 when not applicable
    int action = -1;  // -1 when not applicable
    double value = 0; // offending probability, sum, or reward
    std::string detail;

    std::string to_string() const;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;  // one line per violation
};

class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

// Re-checks every structural invariant of the instance and reports each
// violation with its coordinates. An empty report means the instance is valid.
ValidationReport check_instance(const MdpInstance& instance);

// Immutable certificate that an instance passed check_instance. Also caches
// the preference rank of each state: 0 for non-end states (which resolve to
// the timeout outcome at the horizon), k >= 1 for the k-th end state.
class ValidatedInstance {
public:
    const MdpInstance& instance() const { return instance_; }
    const MdpInstance* operator->() const { return &instance_; }

    int rank_of(int state) const { return rank_[state]; }
    bool is_end(int state) const { return rank_[state] > 0; }
    // State index carrying preference rank k, 1 <= k <= n.
    int end_state(int rank) const { return instance_.end_states[rank - 1]; }
    // Number of distinct outcomes, timeout included.
    int num_ranks() const { return instance_.num_end_states() + 1; }

private:
    friend ValidatedInstance validate(MdpInstance instance);
    ValidatedInstance(MdpInstance instance, std::vector<int> rank)
        : instance_(std::move(instance)), rank_(std::move(rank)) {}

    MdpInstance instance_;
    std::vector<int> rank_;
};

// Throws ValidationError carrying the full report when any invariant fails.
ValidatedInstance validate(MdpInstance instance);

// Shortest decimal form that round-trips the double (17 significant digits).
// Used everywhere a float reaches an output document, so that identical
// inputs always produce identical bytes.
std::string format_double(double x);

}  // namespace lexiplan
