#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lexiplan/lex_solver.hpp"
#include "lexiplan/quantile_planner.hpp"

namespace lexiplan {

// Document could not be read: bad syntax, bad schema, duplicate sparse keys,
// or entries that cannot be materialized (transition indices out of range).
class ParseError : public Error {
public:
    using Error::Error;
};

// Minimal JSON document model used for emission. Parsing goes through a real
// JSON library; emission is hand-rolled so output bytes are fully pinned:
// object keys print in insertion order (call sites keep them alphabetical,
// matching the canonical form), doubles print with 17 significant digits,
// scalar-only arrays print inline.
class JsonValue {
public:
    JsonValue() : value_(nullptr) {}

    static JsonValue null() { return JsonValue(); }
    static JsonValue boolean(bool b) { return JsonValue(b); }
    static JsonValue integer(long long i) { return JsonValue(i); }
    static JsonValue number(double d) { return JsonValue(d); }
    static JsonValue string(std::string s) { return JsonValue(std::move(s)); }
    static JsonValue array() { return JsonValue(Array{}); }
    static JsonValue object() { return JsonValue(Object{}); }

    void push_back(JsonValue v);
    void set(std::string key, JsonValue v);

    std::string dump() const;  // no trailing newline

private:
    using Array = std::vector<JsonValue>;
    using Object = std::vector<std::pair<std::string, JsonValue>>;
    using Storage =
        std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object>;

    template <typename T>
    explicit JsonValue(T v) : value_(std::move(v)) {}

    bool is_scalar() const;
    void dump_to(std::string& out, int indent) const;

    Storage value_;
};

JsonValue to_json(const ValueVector& values);
JsonValue to_json(const PolicyTable& policy);

// ---- instance documents ----------------------------------------------------

struct InstanceDocument {
    MdpInstance instance;
    std::optional<RewardSpec> rewards;
    std::optional<QuantileObjective> objective;
};

// Reads a structured-text instance document. Sparse entries omitted from
// "transitions"/"rewards" are zero; duplicate (s,a,s') keys are rejected.
InstanceDocument parse_instance_document(const std::string& text);

// Canonical emission: keys sorted, sparse entries sorted by (s,a,s'), zero
// entries dropped, floats with 17 significant digits. Idempotent under
// parse/emit.
std::string emit_instance_document(const InstanceDocument& doc);

struct LoadedProblem {
    ValidatedInstance instance;
    std::optional<RewardSpec> rewards;
    std::optional<QuantileObjective> objective;
};

// parse + validate of everything the document carries.
LoadedProblem load_problem(const std::string& text);

// ---- policy documents -------------------------------------------------------

PolicyTable parse_policy_document(const std::string& text);
std::string emit_policy_document(const PolicyTable& policy);

// ---- solve reports ----------------------------------------------------------

struct ReportOptions {
    // Wall-clock timings vary run to run, so they are excluded by default to
    // keep identical inputs producing identical bytes.
    bool include_timings = false;
};

std::string emit_lex_report(const ValidatedInstance& instance, const LexSolution& solution,
                            double eps, double solve_seconds, const ReportOptions& options = {});

std::string emit_mqo_report(const ValidatedInstance& instance, const QuantileObjective& objective,
                            const QuantileSolveReport& report, double eps,
                            const ReportOptions& options = {});

std::string emit_eval_report(const ValidatedInstance& instance, const PolicyTable& policy,
                             const std::optional<RewardSpec>& rewards,
                             const std::vector<double>& taus);

}  // namespace lexiplan
