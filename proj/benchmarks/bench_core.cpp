#include <benchmark/benchmark.h>

#include "lexiplan/generators.hpp"
#include "lexiplan/lex_solver.hpp"
#include "lexiplan/oracle.hpp"
#include "lexiplan/quantile_planner.hpp"

namespace {

using namespace lexiplan;

ValidatedInstance random_instance(int states, int actions, int horizon, int ends,
                                  std::uint64_t seed) {
    RandomInstanceParams params;
    params.num_states = states;
    params.num_actions = actions;
    params.horizon = horizon;
    params.num_end_states = ends;
    params.density = 0.5;
    return validate(generate_random(params, seed).instance);
}

void BM_Propagate(benchmark::State& state) {
    const ValidatedInstance vinst =
        random_instance(static_cast<int>(state.range(0)), 4, 32, 4, 11);
    const PolicyTable policy = PolicyTable::zeros(vinst->horizon, vinst->num_states);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(vinst, policy));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Propagate)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_SolveLexicographic(benchmark::State& state) {
    const ValidatedInstance vinst =
        random_instance(static_cast<int>(state.range(0)), 4, 32, 4, 12);
    RewardSpec rewards;
    for (int rank = 1; rank <= 3; ++rank) {
        rewards.levels.push_back(build_quantile_reward(vinst, rank));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_lexicographic(vinst, rewards));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveLexicographic)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_SolveMultiQuantile(benchmark::State& state) {
    HazardGridParams params;
    params.width = static_cast<int>(state.range(0));
    params.height = static_cast<int>(state.range(0));
    params.horizon = 4 * static_cast<int>(state.range(0));
    const ValidatedInstance vinst = validate(generate_hazard_grid(params, 21).instance);
    const QuantileObjective objective{{0.25, 0.5, 0.9}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_multi_quantile(vinst, objective));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveMultiQuantile)->RangeMultiplier(2)->Range(4, 16)->Complexity();

void BM_OracleEnumeration(benchmark::State& state) {
    const ValidatedInstance vinst = random_instance(4, 3, 2, 2, 13);
    RewardSpec rewards;
    rewards.levels.push_back(build_quantile_reward(vinst, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_lex_optimal(vinst, rewards, kDefaultEps,
                                                         kDefaultPolicyBudget, false));
    }
}
BENCHMARK(BM_OracleEnumeration);

}  // namespace

BENCHMARK_MAIN();
