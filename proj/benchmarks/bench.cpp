#include "uhvga/hypervolume.hpp"
#include "uhvga/problems.hpp"
#include "uhvga/run.hpp"
#include "uhvga/uhv_gradient.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace uhvga;

namespace {

const ObjectivePoint r11{11.0, 11.0};

std::vector<ObjectivePoint> random_points(std::size_t p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<ObjectivePoint> ys(p);
    for (auto& y : ys) {
        y = {u(rng), u(rng)};
    }
    return ys;
}

void BM_Hypervolume(benchmark::State& state)
{
    const ObjectiveMatrix Y(random_points(state.range(0), 3), r11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hypervolume(Y));
    }
}
BENCHMARK(BM_Hypervolume)->RangeMultiplier(4)->Range(4, 1024);

void BM_Uhv(benchmark::State& state)
{
    const ObjectiveMatrix Y(random_points(state.range(0), 4), r11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhv(Y));
    }
}
BENCHMARK(BM_Uhv)->RangeMultiplier(4)->Range(4, 1024);

void BM_UhvGradient(benchmark::State& state)
{
    const std::size_t p = state.range(0);
    const auto problem = make_problem("bisphere", 10);
    SolutionSet X = sample_initial_set(*problem, p, 7);
    std::vector<MoGradient> grads;
    for (std::size_t i = 0; i < p; ++i) {
        X.objectives().push_back(problem->objectives(X.solution(i)));
        grads.push_back(gradient(*problem, X.solution(i)));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(uhv_gradient(*problem, X, grads, r11));
    }
}
BENCHMARK(BM_UhvGradient)->Arg(9)->Arg(33)->Arg(129);

void BM_WfgEvaluate(benchmark::State& state)
{
    const auto problem = make_problem("wfg" + std::to_string(state.range(0)), 24);
    const SolutionSet X = sample_initial_set(*problem, 1, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(problem->objectives(X.solution(0)));
    }
}
BENCHMARK(BM_WfgEvaluate)->DenseRange(1, 9);

void BM_AdamIterations(benchmark::State& state)
{
    const auto problem = make_problem("bisphere", 10);
    RunOptions options;
    options.p = 9;
    options.budget = 100000000;
    options.max_iterations = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(*problem, options));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AdamIterations)->Arg(100)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
