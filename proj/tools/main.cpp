// lexiplan command-line tool: validate / solve / evaluate / cross-check
// instance documents, and generate benchmark instances.
//
// Exit codes: 0 success, 1 usage, 2 unreadable or unparsable input,
// 3 validation failure, 4 enumeration budget exceeded, 5 internal invariant
// failure (including oracle disagreement).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lexiplan/generators.hpp"
#include "lexiplan/io.hpp"
#include "lexiplan/oracle.hpp"

namespace {

using namespace lexiplan;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBudget = 4;
constexpr int kExitInvariant = 5;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& body) {
    if (out_path.empty() || out_path == "-") {
        std::cout << body << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write file: " + out_path);
    }
    out << body << '\n';
}

std::uint64_t resolve_budget(std::uint64_t flag_value, bool flag_given) {
    if (flag_given) return flag_value;
    if (const char* env = std::getenv("LEXIPLAN_BUDGET")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || parsed == 0) {
            throw CLI::ValidationError("LEXIPLAN_BUDGET must be a positive integer");
        }
        return parsed;
    }
    return kDefaultPolicyBudget;
}

std::string format_rank_list(const std::vector<int>& ranks) {
    std::string out = "[";
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(ranks[i]);
    }
    return out + "]";
}

std::string format_value_list(const ValueVector& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += format_double(values[i]);
    }
    return out + "]";
}

int run_validate(const std::string& path) {
    const InstanceDocument doc = parse_instance_document(read_file(path));
    ValidationReport report = check_instance(doc.instance);
    if (report.ok() && doc.rewards) {
        // reward checks need the rank table, so validate the instance first
        const ValidatedInstance vinst = validate(doc.instance);
        report = check_rewards(vinst, *doc.rewards);
    }
    if (report.ok() && doc.objective) {
        try {
            validate_objective(*doc.objective);
        } catch (const ArgumentError& e) {
            std::cout << e.what() << '\n';
            return kExitValidation;
        }
    }
    if (!report.ok()) {
        std::cout << report.to_string();
        return kExitValidation;
    }
    std::cout << "OK\n";
    return 0;
}

int run_solve_lex(const std::string& path, double eps, bool timings, const std::string& out) {
    const LoadedProblem problem = load_problem(read_file(path));
    if (!problem.rewards) {
        throw ArgumentError("solve-lex requires a \"rewards\" block in the document");
    }
    const auto start = std::chrono::steady_clock::now();
    const LexSolution solution = solve_lexicographic(problem.instance, *problem.rewards, eps);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ReportOptions options;
    options.include_timings = timings;
    write_output(out, emit_lex_report(problem.instance, solution, eps, seconds, options));
    return 0;
}

int run_solve_mqo(const std::string& path, double eps, bool timings, const std::string& out) {
    const LoadedProblem problem = load_problem(read_file(path));
    if (!problem.objective) {
        throw ArgumentError("solve-mqo requires an \"objective\" block in the document");
    }
    const QuantileSolveReport report =
        solve_multi_quantile(problem.instance, *problem.objective, eps);
    ReportOptions options;
    options.include_timings = timings;
    write_output(out, emit_mqo_report(problem.instance, *problem.objective, report, eps, options));
    return 0;
}

int run_eval(const std::string& path, const std::string& policy_path,
             const std::vector<double>& tau_flags, const std::string& out) {
    const LoadedProblem problem = load_problem(read_file(path));
    const PolicyTable policy = parse_policy_document(read_file(policy_path));
    check_policy(problem.instance, policy);

    std::vector<double> taus = tau_flags;
    if (taus.empty() && problem.objective) taus = problem.objective->taus;
    for (double tau : taus) {
        if (!(tau > 0.0 && tau <= 1.0)) {
            throw ArgumentError("TauOutOfRange: " + format_double(tau));
        }
    }
    write_output(out, emit_eval_report(problem.instance, policy, problem.rewards, taus));
    return 0;
}

struct OracleCheck {
    std::string name;
    bool agree;
    std::string detail;
};

int run_oracle(const std::string& path, int scheme, double eps, std::uint64_t budget,
               const std::string& out) {
    const LoadedProblem problem = load_problem(read_file(path));
    const ValidatedInstance& vinst = problem.instance;
    const MdpInstance& m = vinst.instance();
    if (!problem.rewards && !problem.objective) {
        throw ArgumentError("oracle requires a \"rewards\" or \"objective\" block");
    }
    std::vector<OracleCheck> checks;
    auto add = [&](std::string name, bool agree, std::string detail) {
        checks.push_back({std::move(name), agree, std::move(detail)});
    };

    if (problem.rewards) {
        const LexSolution solution = solve_lexicographic(vinst, *problem.rewards, eps);
        ValueVector solver_value(problem.rewards->num_levels(), 0.0);
        for (int i = 0; i < problem.rewards->num_levels(); ++i) {
            for (int s = 0; s < m.num_states; ++s) {
                solver_value[i] += m.initial_distribution[s] * solution.values.at(i, 0, s);
            }
        }
        const LexOptimum brute =
            brute_force_lex_optimal(vinst, *problem.rewards, eps, budget, false);
        add("lex_value_matches_enumeration",
            lex_compare(solver_value, brute.best, eps) == LexOrder::Equal,
            "solver=" + format_value_list(solver_value) + " oracle=" + format_value_list(brute.best));

        const auto per_state = brute_force_lex_optimal_per_state(vinst, *problem.rewards, eps, budget);
        bool per_state_ok = true;
        for (int s = 0; s < m.num_states && per_state_ok; ++s) {
            ValueVector column(problem.rewards->num_levels());
            for (int i = 0; i < problem.rewards->num_levels(); ++i) {
                column[i] = solution.values.at(i, 0, s);
            }
            per_state_ok = lex_compare(column, per_state[s], eps) == LexOrder::Equal;
        }
        add("lex_value_matches_enumeration_per_state", per_state_ok,
            std::to_string(m.num_states) + " start states compared");
    }

    if (problem.objective) {
        const QuantileObjective& objective = *problem.objective;
        const QuantileSolveReport report = solve_multi_quantile(vinst, objective, eps);
        const int n = m.num_end_states();

        std::optional<SchemeResult> filter_first;
        std::optional<SchemeResult> direct;
        if (scheme == 0 || scheme == 1) {
            filter_first =
                brute_force_scheme(vinst, objective, SchemeVariant::FilterThenMinimize, eps, budget);
        }
        if (scheme == 0 || scheme == 2) {
            direct = brute_force_scheme(vinst, objective, SchemeVariant::MinimizeDirect, eps, budget);
        }

        if (filter_first) {
            add("mqo_ranks_match_scheme1", report.optimal_ranks == filter_first->ranks,
                "mqo=" + format_rank_list(report.optimal_ranks) +
                    " scheme1=" + format_rank_list(filter_first->ranks));
        }
        if (direct) {
            add("mqo_ranks_match_scheme2", report.optimal_ranks == direct->ranks,
                "mqo=" + format_rank_list(report.optimal_ranks) +
                    " scheme2=" + format_rank_list(direct->ranks));
        }
        if (filter_first && direct) {
            std::string sizes = "survivor set sizes per level: scheme1=[";
            for (std::size_t i = 0; i < filter_first->survivors.size(); ++i) {
                if (i) sizes += ",";
                sizes += std::to_string(filter_first->survivors[i].size());
            }
            sizes += "] scheme2=[";
            for (std::size_t i = 0; i < direct->survivors.size(); ++i) {
                if (i) sizes += ",";
                sizes += std::to_string(direct->survivors[i].size());
            }
            sizes += "]";
            add("schemes_rank_agreement", filter_first->ranks == direct->ranks, sizes);
        }

        // Lemma-style probe check: each probed value must equal one minus the
        // minimal CDF over the policies surviving the previous levels.
        if (direct) {
            PolicyEnumeration enumeration(vinst, budget);
            std::vector<std::uint64_t> all(enumeration.total_count());
            for (std::uint64_t i = 0; i < all.size(); ++i) all[i] = i;
            bool probes_ok = true;
            std::string detail;
            for (std::size_t level = 0; level < report.probe_trace.size() && probes_ok; ++level) {
                const std::vector<std::uint64_t>& surviving =
                    level == 0 ? all : direct->survivors[level - 1];
                for (const ProbeRecord& probe : report.probe_trace[level]) {
                    const double min_cdf =
                        brute_force_min_cdf(vinst, surviving, probe.candidate - 1, budget);
                    if (std::fabs((1.0 - probe.value) - min_cdf) > 1e-9) {
                        probes_ok = false;
                        detail = "level " + std::to_string(level + 1) + " candidate " +
                                 std::to_string(probe.candidate) + ": probe=" +
                                 format_double(probe.value) + " oracle_min_cdf=" +
                                 format_double(min_cdf);
                        break;
                    }
                }
            }
            if (probes_ok) detail = "all probed ranks match the enumeration minima";
            add("lemma1_probe_values", probes_ok, detail);
        }

        const RewardSpec locked = build_locked_rewards(vinst, report.optimal_ranks);
        const LexOptimum locked_best = brute_force_lex_optimal(vinst, locked, eps, budget, false);
        add("final_value_lex_optimal",
            lex_compare(report.final_values, locked_best.best, eps) == LexOrder::Equal,
            "solver=" + format_value_list(report.final_values) +
                " oracle=" + format_value_list(locked_best.best));

        const EndDistribution dist = propagate(vinst, report.final_policy);
        bool faithful = true;
        for (int k = 0; k < objective.num_levels(); ++k) {
            faithful = faithful &&
                       lower_quantile(dist, objective.taus[k]) == report.optimal_ranks[k];
        }
        add("final_policy_quantiles", faithful,
            "ranks=" + format_rank_list(report.optimal_ranks));

        int probe_budget = 1;  // ceil(log2(n+1)) + 1
        for (int v = n; v > 0; v >>= 1) ++probe_budget;
        bool within_budget = true;
        for (int c : report.probe_counts) within_budget = within_budget && c <= probe_budget;
        add("probe_budget", within_budget,
            "max allowed " + std::to_string(probe_budget) + " probes per level");

        bool monotone = true;
        for (std::size_t k = 1; k < report.optimal_ranks.size(); ++k) {
            monotone = monotone && report.optimal_ranks[k] >= report.optimal_ranks[k - 1];
        }
        add("rank_monotonicity", monotone, format_rank_list(report.optimal_ranks));
    }

    bool all_agree = true;
    JsonValue list = JsonValue::array();
    for (const OracleCheck& check : checks) {
        all_agree = all_agree && check.agree;
        JsonValue entry = JsonValue::object();
        entry.set("agree", JsonValue::boolean(check.agree));
        entry.set("detail", JsonValue::string(check.detail));
        entry.set("name", JsonValue::string(check.name));
        list.push_back(std::move(entry));
    }
    JsonValue root = JsonValue::object();
    root.set("checks", std::move(list));
    root.set("command", JsonValue::string("oracle"));
    root.set("instance", JsonValue::string(m.name));
    root.set("overall", JsonValue::string(all_agree ? "AGREE" : "DISAGREE"));
    write_output(out, root.dump());
    return all_agree ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-horizon lexicographic and quantile-objective MDP planner"};
    app.require_subcommand(1);

    std::string in_path, out_path, policy_path;
    double eps = kDefaultEps;
    bool timings = false;
    std::uint64_t budget_flag = kDefaultPolicyBudget;
    int scheme = 0;
    std::vector<double> tau_flags;

    CLI::App* cmd_validate = app.add_subcommand("validate", "check an instance document");
    cmd_validate->add_option("file", in_path, "instance document")->required();

    CLI::App* cmd_lex = app.add_subcommand("solve-lex", "solve the lexicographic MDP");
    cmd_lex->add_option("file", in_path, "instance document with rewards")->required();
    cmd_lex->add_option("--eps", eps, "tie tolerance")->check(CLI::NonNegativeNumber);
    cmd_lex->add_flag("--timings", timings, "include wall-clock timings in the report");
    cmd_lex->add_option("-o,--output", out_path, "write the report here instead of stdout");

    CLI::App* cmd_mqo = app.add_subcommand("solve-mqo", "solve the multi-quantile objective");
    cmd_mqo->add_option("file", in_path, "instance document with objective taus")->required();
    cmd_mqo->add_option("--eps", eps, "tie tolerance")->check(CLI::NonNegativeNumber);
    cmd_mqo->add_flag("--timings", timings, "include wall-clock timings in the report");
    cmd_mqo->add_option("-o,--output", out_path, "write the report here instead of stdout");

    CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate a fixed policy");
    cmd_eval->add_option("file", in_path, "instance document")->required();
    cmd_eval->add_option("--policy", policy_path, "policy document")->required();
    cmd_eval->add_option("--tau", tau_flags, "quantile levels to report");
    cmd_eval->add_option("-o,--output", out_path, "write the report here instead of stdout");

    CLI::App* cmd_oracle =
        app.add_subcommand("oracle", "cross-check the solver against brute-force enumeration");
    cmd_oracle->add_option("file", in_path, "instance document")->required();
    cmd_oracle->add_option("--scheme", scheme, "restrict to one filtering variant (1 or 2)")
        ->check(CLI::Range(1, 2));
    CLI::Option* budget_opt =
        cmd_oracle->add_option("--budget", budget_flag, "policy enumeration budget")
            ->check(CLI::PositiveNumber);
    cmd_oracle->add_option("--eps", eps, "tie tolerance")->check(CLI::NonNegativeNumber);
    cmd_oracle->add_option("-o,--output", out_path, "write the report here instead of stdout");

    CLI::App* cmd_gen = app.add_subcommand("gen", "generate an instance document");
    cmd_gen->require_subcommand(1);
    RandomInstanceParams random_params;
    HazardGridParams grid_params;
    std::uint64_t seed = 0;

    CLI::App* gen_random = cmd_gen->add_subcommand("random", "seeded random instance");
    gen_random->add_option("--states", random_params.num_states)->check(CLI::Range(2, 100000));
    gen_random->add_option("--actions", random_params.num_actions)->check(CLI::PositiveNumber);
    gen_random->add_option("--horizon", random_params.horizon)->check(CLI::PositiveNumber);
    gen_random->add_option("--ends", random_params.num_end_states)->check(CLI::NonNegativeNumber);
    gen_random->add_option("--density", random_params.density)->check(CLI::Range(0.0, 1.0));
    gen_random->add_option("--levels", random_params.reward_levels)->check(CLI::NonNegativeNumber);
    gen_random->add_option("--taus", random_params.taus, "objective quantile levels");
    gen_random->add_option("--seed", seed)->required();
    gen_random->add_option("-o,--output", out_path, "write the document here instead of stdout");

    CLI::App* gen_grid = cmd_gen->add_subcommand("grid", "hazard grid instance");
    gen_grid->add_option("--width", grid_params.width)->check(CLI::PositiveNumber);
    gen_grid->add_option("--height", grid_params.height)->check(CLI::PositiveNumber);
    gen_grid->add_option("--horizon", grid_params.horizon)->check(CLI::PositiveNumber);
    gen_grid->add_option("--slip", grid_params.slip)->check(CLI::Range(0.0, 0.97));
    gen_grid->add_option("--hazard-density", grid_params.hazard_density)
        ->check(CLI::Range(0.0, 1.0));
    gen_grid->add_option("--crash-prob", grid_params.crash_prob)->check(CLI::Range(0.0, 1.0));
    gen_grid->add_option("--taus", grid_params.taus, "objective quantile levels");
    gen_grid->add_option("--seed", seed)->required();
    gen_grid->add_option("-o,--output", out_path, "write the document here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (app.got_subcommand(cmd_validate)) {
            return run_validate(in_path);
        }
        if (app.got_subcommand(cmd_lex)) {
            return run_solve_lex(in_path, eps, timings, out_path);
        }
        if (app.got_subcommand(cmd_mqo)) {
            return run_solve_mqo(in_path, eps, timings, out_path);
        }
        if (app.got_subcommand(cmd_eval)) {
            return run_eval(in_path, policy_path, tau_flags, out_path);
        }
        if (app.got_subcommand(cmd_oracle)) {
            const std::uint64_t budget = resolve_budget(budget_flag, budget_opt->count() > 0);
            return run_oracle(in_path, scheme, eps, budget, out_path);
        }
        if (app.got_subcommand(cmd_gen)) {
            InstanceDocument doc;
            if (cmd_gen->got_subcommand(gen_random)) {
                doc = generate_random(random_params, seed);
            } else {
                doc = generate_hazard_grid(grid_params, seed);
            }
            write_output(out_path, emit_instance_document(doc));
            return 0;
        }
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << e.what();
        return kExitValidation;
    } catch (const ArgumentError& e) {
        std::cerr << e.what() << '\n';
        return kExitValidation;
    } catch (const BudgetError& e) {
        std::cerr << e.what() << '\n';
        return kExitBudget;
    } catch (const DimensionError& e) {
        std::cerr << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
}
