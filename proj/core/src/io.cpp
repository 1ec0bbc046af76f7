#include "lexiplan/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "json.hpp"

namespace lexiplan {

using nlohmann::json;

// ---- JsonValue ---------------------------------------------------------------

void JsonValue::push_back(JsonValue v) {
    std::get<Array>(value_).push_back(std::move(v));
}

void JsonValue::set(std::string key, JsonValue v) {
    std::get<Object>(value_).emplace_back(std::move(key), std::move(v));
}

bool JsonValue::is_scalar() const {
    return !std::holds_alternative<Array>(value_) && !std::holds_alternative<Object>(value_);
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void append_indent(std::string& out, int indent) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
}

}  // namespace

void JsonValue::dump_to(std::string& out, int indent) const {
    if (std::holds_alternative<std::nullptr_t>(value_)) {
        out += "null";
    } else if (const bool* b = std::get_if<bool>(&value_)) {
        out += *b ? "true" : "false";
    } else if (const long long* i = std::get_if<long long>(&value_)) {
        out += std::to_string(*i);
    } else if (const double* d = std::get_if<double>(&value_)) {
        out += format_double(*d);
    } else if (const std::string* s = std::get_if<std::string>(&value_)) {
        append_escaped(out, *s);
    } else if (const Array* arr = std::get_if<Array>(&value_)) {
        if (arr->empty()) {
            out += "[]";
            return;
        }
        const bool inline_ok =
            std::all_of(arr->begin(), arr->end(), [](const JsonValue& v) { return v.is_scalar(); });
        if (inline_ok) {
            out += '[';
            for (std::size_t i = 0; i < arr->size(); ++i) {
                if (i) out += ", ";
                (*arr)[i].dump_to(out, indent);
            }
            out += ']';
        } else {
            out += "[\n";
            for (std::size_t i = 0; i < arr->size(); ++i) {
                append_indent(out, indent + 1);
                (*arr)[i].dump_to(out, indent + 1);
                if (i + 1 < arr->size()) out += ',';
                out += '\n';
            }
            append_indent(out, indent);
            out += ']';
        }
    } else {
        const Object& obj = std::get<Object>(value_);
        if (obj.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        for (std::size_t i = 0; i < obj.size(); ++i) {
            append_indent(out, indent + 1);
            append_escaped(out, obj[i].first);
            out += ": ";
            obj[i].second.dump_to(out, indent + 1);
            if (i + 1 < obj.size()) out += ',';
            out += '\n';
        }
        append_indent(out, indent);
        out += '}';
    }
}

std::string JsonValue::dump() const {
    std::string out;
    dump_to(out, 0);
    return out;
}

JsonValue to_json(const ValueVector& values) {
    JsonValue arr = JsonValue::array();
    for (double v : values) arr.push_back(JsonValue::number(v));
    return arr;
}

JsonValue to_json(const PolicyTable& policy) {
    JsonValue rows = JsonValue::array();
    for (int t = 0; t < policy.horizon; ++t) {
        JsonValue row = JsonValue::array();
        for (int s = 0; s < policy.num_states; ++s) {
            row.push_back(JsonValue::integer(policy.action(t, s)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- parsing helpers ---------------------------------------------------------

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("SyntaxError: ") + e.what());
    }
}

int require_int(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
    const json& v = j.at(key);
    if (!v.is_number_integer()) {
        throw ParseError(std::string("key \"") + key + "\" must be an integer");
    }
    return v.get<int>();
}

double entry_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + " must be a number");
    return v.get<double>();
}

int entry_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ParseError(where + " must be an integer");
    return v.get<int>();
}

// Reads sparse (s, a, s', value) entries into a dense tensor.
void read_sparse_tensor(const json& entries, const std::string& where, const MdpInstance& shape,
                        std::vector<double>& dense) {
    if (!entries.is_array()) throw ParseError(where + " must be an array");
    std::vector<char> used(dense.size(), 0);
    std::size_t k = 0;
    for (const json& entry : entries) {
        const std::string at = where + "[" + std::to_string(k++) + "]";
        if (!entry.is_array() || entry.size() != 4) {
            throw ParseError(at + " must be [s, a, s', value]");
        }
        const int s = entry_int(entry[0], at + "[0]");
        const int a = entry_int(entry[1], at + "[1]");
        const int to = entry_int(entry[2], at + "[2]");
        const double value = entry_number(entry[3], at + "[3]");
        if (s < 0 || s >= shape.num_states || to < 0 || to >= shape.num_states || a < 0 ||
            a >= shape.num_actions) {
            throw ParseError(at + ": index out of range (" + std::to_string(s) + "," +
                             std::to_string(a) + "," + std::to_string(to) + ")");
        }
        const std::size_t idx = shape.transition_index(s, a, to);
        if (used[idx]) {
            throw ParseError("DuplicateEntry: " + where + " (" + std::to_string(s) + "," +
                             std::to_string(a) + "," + std::to_string(to) + ")");
        }
        used[idx] = 1;
        dense[idx] = value;
    }
}

}  // namespace

InstanceDocument parse_instance_document(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("top-level value must be an object");

    static const std::set<std::string> known = {
        "end_states",  "horizon",  "initial_distribution", "name",
        "num_actions", "num_states", "objective",          "rewards",
        "transitions",
    };
    for (const auto& item : j.items()) {
        if (!known.contains(item.key())) {
            throw ParseError("unknown key \"" + item.key() + "\"");
        }
    }

    InstanceDocument doc;
    MdpInstance& m = doc.instance;
    m.num_states = require_int(j, "num_states");
    m.num_actions = require_int(j, "num_actions");
    m.horizon = require_int(j, "horizon");
    if (m.num_states <= 0 || m.num_actions <= 0) {
        throw ParseError("num_states and num_actions must be positive");
    }

    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ParseError("key \"name\" must be a string");
        m.name = j.at("name").get<std::string>();
    }

    if (!j.contains("end_states") || !j.at("end_states").is_array()) {
        throw ParseError("key \"end_states\" must be an array");
    }
    std::size_t k = 0;
    for (const json& e : j.at("end_states")) {
        m.end_states.push_back(entry_int(e, "end_states[" + std::to_string(k++) + "]"));
    }

    if (!j.contains("initial_distribution") || !j.at("initial_distribution").is_array()) {
        throw ParseError("key \"initial_distribution\" must be an array");
    }
    k = 0;
    for (const json& p : j.at("initial_distribution")) {
        m.initial_distribution.push_back(
            entry_number(p, "initial_distribution[" + std::to_string(k++) + "]"));
    }

    m.transitions.assign(
        static_cast<std::size_t>(m.num_states) * m.num_actions * m.num_states, 0.0);
    if (!j.contains("transitions")) throw ParseError("missing key \"transitions\"");
    read_sparse_tensor(j.at("transitions"), "transitions", m, m.transitions);

    if (j.contains("rewards")) {
        if (!j.at("rewards").is_array()) throw ParseError("key \"rewards\" must be an array");
        RewardSpec rewards;
        std::size_t level = 0;
        for (const json& entries : j.at("rewards")) {
            std::vector<double> dense(m.transitions.size(), 0.0);
            read_sparse_tensor(entries, "rewards[" + std::to_string(level++) + "]", m, dense);
            rewards.levels.push_back(std::move(dense));
        }
        if (rewards.levels.empty()) throw ParseError("key \"rewards\" must not be empty");
        doc.rewards = std::move(rewards);
    }

    if (j.contains("objective")) {
        if (!j.at("objective").is_array()) throw ParseError("key \"objective\" must be an array");
        QuantileObjective objective;
        k = 0;
        for (const json& tau : j.at("objective")) {
            objective.taus.push_back(entry_number(tau, "objective[" + std::to_string(k++) + "]"));
        }
        if (objective.taus.empty()) throw ParseError("key \"objective\" must not be empty");
        doc.objective = std::move(objective);
    }

    return doc;
}

namespace {

JsonValue sparse_tensor_json(const MdpInstance& shape, const std::vector<double>& dense) {
    JsonValue entries = JsonValue::array();
    for (int s = 0; s < shape.num_states; ++s) {
        for (int a = 0; a < shape.num_actions; ++a) {
            for (int to = 0; to < shape.num_states; ++to) {
                const double value = dense[shape.transition_index(s, a, to)];
                if (value == 0.0) continue;
                JsonValue entry = JsonValue::array();
                entry.push_back(JsonValue::integer(s));
                entry.push_back(JsonValue::integer(a));
                entry.push_back(JsonValue::integer(to));
                entry.push_back(JsonValue::number(value));
                entries.push_back(std::move(entry));
            }
        }
    }
    return entries;
}

}  // namespace

std::string emit_instance_document(const InstanceDocument& doc) {
    const MdpInstance& m = doc.instance;
    JsonValue root = JsonValue::object();

    JsonValue ends = JsonValue::array();
    for (int e : m.end_states) ends.push_back(JsonValue::integer(e));
    root.set("end_states", std::move(ends));
    root.set("horizon", JsonValue::integer(m.horizon));
    root.set("initial_distribution", to_json(m.initial_distribution));
    root.set("name", JsonValue::string(m.name));
    root.set("num_actions", JsonValue::integer(m.num_actions));
    root.set("num_states", JsonValue::integer(m.num_states));
    if (doc.objective) {
        root.set("objective", to_json(doc.objective->taus));
    }
    if (doc.rewards) {
        JsonValue levels = JsonValue::array();
        for (const std::vector<double>& level : doc.rewards->levels) {
            levels.push_back(sparse_tensor_json(m, level));
        }
        root.set("rewards", std::move(levels));
    }
    root.set("transitions", sparse_tensor_json(m, m.transitions));
    return root.dump();
}

LoadedProblem load_problem(const std::string& text) {
    InstanceDocument doc = parse_instance_document(text);
    ValidatedInstance vinst = validate(std::move(doc.instance));
    if (doc.rewards) validate_rewards(vinst, *doc.rewards);
    if (doc.objective) validate_objective(*doc.objective);
    return {std::move(vinst), std::move(doc.rewards), std::move(doc.objective)};
}

// ---- policy documents --------------------------------------------------------

PolicyTable parse_policy_document(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("top-level value must be an object");
    PolicyTable policy;
    policy.horizon = require_int(j, "horizon");
    policy.num_states = require_int(j, "num_states");
    if (!j.contains("actions") || !j.at("actions").is_array()) {
        throw ParseError("key \"actions\" must be an array");
    }
    const json& rows = j.at("actions");
    if (static_cast<int>(rows.size()) != policy.horizon) {
        throw ParseError("\"actions\" must have one row per decision epoch");
    }
    for (std::size_t t = 0; t < rows.size(); ++t) {
        const json& row = rows[t];
        if (!row.is_array() || static_cast<int>(row.size()) != policy.num_states) {
            throw ParseError("actions[" + std::to_string(t) + "] must list one action per state");
        }
        for (std::size_t s = 0; s < row.size(); ++s) {
            policy.actions.push_back(entry_int(
                row[s], "actions[" + std::to_string(t) + "][" + std::to_string(s) + "]"));
        }
    }
    return policy;
}

std::string emit_policy_document(const PolicyTable& policy) {
    JsonValue root = JsonValue::object();
    root.set("actions", to_json(policy));
    root.set("horizon", JsonValue::integer(policy.horizon));
    root.set("num_states", JsonValue::integer(policy.num_states));
    return root.dump();
}

// ---- solve reports -----------------------------------------------------------

namespace {

JsonValue distribution_json(const EndDistribution& dist) {
    return to_json(dist.mass);
}

JsonValue cdf_json(const EndDistribution& dist) {
    JsonValue arr = JsonValue::array();
    double sum = 0;
    for (double mass : dist.mass) {
        sum += mass;
        arr.push_back(JsonValue::number(sum));
    }
    return arr;
}

JsonValue rank_json(const ValidatedInstance& vinst, int rank) {
    JsonValue out = JsonValue::object();
    out.set("rank", JsonValue::integer(rank));
    out.set("state", rank == 0 ? JsonValue::null() : JsonValue::integer(vinst.end_state(rank)));
    return out;
}

JsonValue per_state_values_json(const std::vector<std::vector<double>>& per_state) {
    JsonValue levels = JsonValue::array();
    for (const std::vector<double>& row : per_state) {
        levels.push_back(to_json(row));
    }
    return levels;
}

}  // namespace

std::string emit_lex_report(const ValidatedInstance& vinst, const LexSolution& solution,
                            double eps, double solve_seconds, const ReportOptions& options) {
    const MdpInstance& m = vinst.instance();
    const EndDistribution dist = propagate(vinst, solution.policy);

    std::vector<std::vector<double>> per_state(solution.values.num_levels());
    ValueVector at_initial(solution.values.num_levels(), 0.0);
    for (int i = 0; i < solution.values.num_levels(); ++i) {
        per_state[i].resize(m.num_states);
        for (int s = 0; s < m.num_states; ++s) {
            per_state[i][s] = solution.values.at(i, 0, s);
            at_initial[i] += m.initial_distribution[s] * per_state[i][s];
        }
    }

    JsonValue root = JsonValue::object();
    root.set("cdf", cdf_json(dist));
    root.set("command", JsonValue::string("solve-lex"));
    root.set("end_distribution", distribution_json(dist));
    root.set("eps", JsonValue::number(eps));
    root.set("instance", JsonValue::string(m.name));
    root.set("policy", to_json(solution.policy));
    if (options.include_timings) {
        JsonValue timings = JsonValue::object();
        timings.set("solve_seconds", JsonValue::number(solve_seconds));
        root.set("timings", std::move(timings));
    }
    root.set("values_at_initial", to_json(at_initial));
    root.set("values_per_state", per_state_values_json(per_state));
    return root.dump();
}

std::string emit_mqo_report(const ValidatedInstance& vinst, const QuantileObjective& objective,
                            const QuantileSolveReport& report, double eps,
                            const ReportOptions& options) {
    const MdpInstance& m = vinst.instance();
    const EndDistribution dist = propagate(vinst, report.final_policy);
    const RewardSpec locked = build_locked_rewards(vinst, report.optimal_ranks);
    const auto per_state = evaluate_state_values(vinst, locked, report.final_policy);

    JsonValue root = JsonValue::object();
    root.set("cdf", cdf_json(dist));
    root.set("command", JsonValue::string("solve-mqo"));
    root.set("end_distribution", distribution_json(dist));
    root.set("eps", JsonValue::number(eps));
    root.set("instance", JsonValue::string(m.name));

    JsonValue ranks = JsonValue::array();
    for (int rank : report.optimal_ranks) ranks.push_back(rank_json(vinst, rank));
    root.set("optimal_ranks", std::move(ranks));

    root.set("policy", to_json(report.final_policy));

    JsonValue counts = JsonValue::array();
    for (int c : report.probe_counts) counts.push_back(JsonValue::integer(c));
    root.set("probe_counts", std::move(counts));

    JsonValue trace = JsonValue::array();
    for (const std::vector<ProbeRecord>& level : report.probe_trace) {
        JsonValue probes = JsonValue::array();
        for (const ProbeRecord& p : level) {
            JsonValue probe = JsonValue::object();
            probe.set("branch", JsonValue::string(p.moved_upper ? "upper" : "lower"));
            probe.set("candidate", JsonValue::integer(p.candidate));
            probe.set("value", JsonValue::number(p.value));
            probes.push_back(std::move(probe));
        }
        trace.push_back(std::move(probes));
    }
    root.set("probe_trace", std::move(trace));

    JsonValue quantiles = JsonValue::array();
    for (double tau : objective.taus) {
        quantiles.push_back(rank_json(vinst, lower_quantile(dist, tau)));
    }
    root.set("quantiles", std::move(quantiles));

    root.set("taus", to_json(objective.taus));
    if (options.include_timings) {
        JsonValue timings = JsonValue::object();
        timings.set("solve_seconds", JsonValue::number(report.solve_seconds));
        root.set("timings", std::move(timings));
    }
    root.set("values_at_initial", to_json(report.final_values));
    root.set("values_per_state", per_state_values_json(per_state));
    return root.dump();
}

std::string emit_eval_report(const ValidatedInstance& vinst, const PolicyTable& policy,
                             const std::optional<RewardSpec>& rewards,
                             const std::vector<double>& taus) {
    const MdpInstance& m = vinst.instance();
    const EndDistribution dist = propagate(vinst, policy);

    JsonValue root = JsonValue::object();
    root.set("cdf", cdf_json(dist));
    root.set("command", JsonValue::string("eval"));
    root.set("end_distribution", distribution_json(dist));
    root.set("instance", JsonValue::string(m.name));
    root.set("policy", to_json(policy));

    if (!taus.empty()) {
        JsonValue quantiles = JsonValue::array();
        for (double tau : taus) {
            JsonValue q = rank_json(vinst, lower_quantile(dist, tau));
            q.set("tau", JsonValue::number(tau));
            quantiles.push_back(std::move(q));
        }
        root.set("quantiles", std::move(quantiles));
    }

    if (rewards) {
        const auto per_state = evaluate_state_values(vinst, *rewards, policy);
        ValueVector at_initial(per_state.size(), 0.0);
        for (std::size_t i = 0; i < per_state.size(); ++i) {
            for (int s = 0; s < m.num_states; ++s) {
                at_initial[i] += m.initial_distribution[s] * per_state[i][s];
            }
        }
        root.set("values_at_initial", to_json(at_initial));
        root.set("values_per_state", per_state_values_json(per_state));
    }
    return root.dump();
}

}  // namespace lexiplan
