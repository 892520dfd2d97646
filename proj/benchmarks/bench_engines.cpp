#include <benchmark/benchmark.h>

#include "qpartial/reduced.hpp"
#include "qpartial/statevector.hpp"

using namespace qpartial;

namespace {

void FullGlobalIteration(benchmark::State& state) {
    const auto g = validate_geometry(state.range(0), 4, 1, 1);
    auto s = uniform_state(g, canonical_placement(g));
    for (auto _ : state) {
        apply_global_iteration(s);
        benchmark::DoNotOptimize(s.amp.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(FullGlobalIteration)->RangeMultiplier(4)->Range(1 << 8, 1 << 18)->Complexity();

void FullLocalIteration(benchmark::State& state) {
    const auto g = validate_geometry(state.range(0), 16, 2, 2);
    auto s = uniform_state(g, canonical_placement(g));
    for (auto _ : state) {
        apply_local_iterations(s, 1);
        benchmark::DoNotOptimize(s.amp.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(FullLocalIteration)->RangeMultiplier(4)->Range(1 << 8, 1 << 18)->Complexity();

void FullBlockMarginals(benchmark::State& state) {
    const auto g = validate_geometry(state.range(0), 16, 2, 2);
    const auto s = uniform_state(g, canonical_placement(g));
    for (auto _ : state) {
        auto p = block_marginals(s);
        benchmark::DoNotOptimize(p.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(FullBlockMarginals)->RangeMultiplier(4)->Range(1 << 8, 1 << 18)->Complexity();

// constant cost regardless of N: the whole point of the 3-basis model
void ReducedPipeline(benchmark::State& state) {
    const auto g =
        validate_geometry(std::int64_t{1} << state.range(0), 1024, 2, 4);
    for (auto _ : state) {
        auto r = initial_reduced(g);
        r = evolve_global(g, r, 1000.0);
        r = evolve_local(g, r, 500.0);
        r = apply_step3(g, r, Step3Ordering::ReflectionThenOracle);
        benchmark::DoNotOptimize(&r);
    }
}
BENCHMARK(ReducedPipeline)->DenseRange(20, 40, 10);

void ProjectClasses(benchmark::State& state) {
    const auto g = validate_geometry(state.range(0), 16, 2, 2);
    const auto s = uniform_state(g, canonical_placement(g));
    for (auto _ : state) {
        auto p = project_classes(s);
        benchmark::DoNotOptimize(&p);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(ProjectClasses)->RangeMultiplier(4)->Range(1 << 8, 1 << 18)->Complexity();

}  // namespace
