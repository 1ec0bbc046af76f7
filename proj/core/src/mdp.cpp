#include "lexiplan/mdp.hpp"

#include <cmath>
#include <cstdio>

namespace lexiplan {

LexOrder lex_compare(const ValueVector& u, const ValueVector& v, double eps) {
    if (u.size() != v.size()) {
        throw DimensionError("lex_compare: LengthMismatch (" + std::to_string(u.size()) +
                             " vs " + std::to_string(v.size()) + ")");
    }
    if (!(eps >= 0)) {
        throw ArgumentError("lex_compare: eps must be >= 0");
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        if (std::fabs(d) > eps) {
            return d > 0 ? LexOrder::Greater : LexOrder::Less;
        }
    }
    return LexOrder::Equal;
}

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // fold -0 into 0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::BadShape: return "BadShape";
        case ViolationKind::BadHorizon: return "BadHorizon";
        case ViolationKind::NonFiniteProbability: return "NonFiniteProbability";
        case ViolationKind::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
        case ViolationKind::RowNotStochastic: return "RowNotStochastic";
        case ViolationKind::EndStateNotAbsorbing: return "EndStateNotAbsorbing";
        case ViolationKind::BadInitialDistribution: return "BadInitialDistribution";
        case ViolationKind::IndexOutOfRange: return "IndexOutOfRange";
        case ViolationKind::DuplicateEndState: return "DuplicateEndState";
        case ViolationKind::NonFiniteReward: return "NonFiniteReward";
        case ViolationKind::EndStateRewardNotZero: return "EndStateRewardNotZero";
    }
    return "Unknown";
}

std::string Violation::to_string() const {
    std::string out = lexiplan::to_string(kind);
    if (state >= 0) out += " state=" + std::to_string(state);
    if (action >= 0) out += " action=" + std::to_string(action);
    if (kind == ViolationKind::RowNotStochastic || kind == ViolationKind::BadInitialDistribution ||
        kind == ViolationKind::NonFiniteProbability || kind == ViolationKind::ProbabilityOutOfRange ||
        kind == ViolationKind::EndStateRewardNotZero || kind == ViolationKind::NonFiniteReward) {
        out += " value=" + format_double(value);
    }
    if (!detail.empty()) out += " (" + detail + ")";
    return out;
}

std::string ValidationReport::to_string() const {
    std::string out;
    for (const Violation& v : violations) {
        out += v.to_string();
        out += '\n';
    }
    return out;
}

ValidationError::ValidationError(ValidationReport report)
    : Error("instance validation failed:\n" + report.to_string()), report_(std::move(report)) {}

ValidationReport check_instance(const MdpInstance& m) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, int s, int a, double value, std::string detail = {}) {
        report.violations.push_back({kind, s, a, value, std::move(detail)});
    };

    if (m.num_states <= 0 || m.num_actions <= 0) {
        add(ViolationKind::BadShape, -1, -1, 0, "num_states and num_actions must be positive");
        return report;  // nothing else is checkable
    }
    if (m.horizon < 1) {
        add(ViolationKind::BadHorizon, -1, -1, m.horizon, "horizon must be >= 1");
    }
    const std::size_t want =
        static_cast<std::size_t>(m.num_states) * m.num_actions * m.num_states;
    if (m.transitions.size() != want) {
        add(ViolationKind::BadShape, -1, -1, 0,
            "transition tensor has " + std::to_string(m.transitions.size()) + " entries, expected " +
                std::to_string(want));
        return report;
    }

    // end-state indexing
    std::vector<char> is_end(m.num_states, 0);
    for (int e : m.end_states) {
        if (e < 0 || e >= m.num_states) {
            add(ViolationKind::IndexOutOfRange, e, -1, 0, "end state index");
        } else if (is_end[e]) {
            add(ViolationKind::DuplicateEndState, e, -1, 0);
        } else {
            is_end[e] = 1;
        }
    }

    // transition rows
    for (int s = 0; s < m.num_states; ++s) {
        for (int a = 0; a < m.num_actions; ++a) {
            double sum = 0;
            bool row_usable = true;
            for (int next = 0; next < m.num_states; ++next) {
                const double p = m.transition(s, a, next);
                if (!std::isfinite(p)) {
                    add(ViolationKind::NonFiniteProbability, s, a, p,
                        "P(s,a," + std::to_string(next) + ")");
                    row_usable = false;
                } else if (p < 0 || p > 1) {
                    add(ViolationKind::ProbabilityOutOfRange, s, a, p,
                        "P(s,a," + std::to_string(next) + ")");
                }
                sum += p;
            }
            if (row_usable && std::fabs(sum - 1.0) > kRowSumTol) {
                add(ViolationKind::RowNotStochastic, s, a, sum);
            }
        }
    }

    // absorbing end states: P(e,a,e) = 1 exactly
    for (int e : m.end_states) {
        if (e < 0 || e >= m.num_states) continue;
        for (int a = 0; a < m.num_actions; ++a) {
            if (m.transition(e, a, e) != 1.0) {
                add(ViolationKind::EndStateNotAbsorbing, e, a, m.transition(e, a, e));
            }
        }
    }

    // initial distribution
    if (static_cast<int>(m.initial_distribution.size()) != m.num_states) {
        add(ViolationKind::BadShape, -1, -1, 0,
            "initial_distribution has " + std::to_string(m.initial_distribution.size()) +
                " entries, expected " + std::to_string(m.num_states));
    } else {
        double sum = 0;
        bool usable = true;
        for (int s = 0; s < m.num_states; ++s) {
            const double p = m.initial_distribution[s];
            if (!std::isfinite(p)) {
                add(ViolationKind::NonFiniteProbability, s, -1, p, "initial_distribution");
                usable = false;
            } else if (p < 0 || p > 1) {
                add(ViolationKind::ProbabilityOutOfRange, s, -1, p, "initial_distribution");
            }
            sum += p;
        }
        if (usable && std::fabs(sum - 1.0) > kRowSumTol) {
            add(ViolationKind::BadInitialDistribution, -1, -1, sum);
        }
    }

    return report;
}

ValidatedInstance validate(MdpInstance instance) {
    ValidationReport report = check_instance(instance);
    if (!report.ok()) {
        throw ValidationError(std::move(report));
    }
    std::vector<int> rank(instance.num_states, 0);
    for (int k = 0; k < instance.num_end_states(); ++k) {
        rank[instance.end_states[k]] = k + 1;
    }
    return ValidatedInstance(std::move(instance), std::move(rank));
}

}  // namespace lexiplan
