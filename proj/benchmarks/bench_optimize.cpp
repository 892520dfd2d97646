#include <benchmark/benchmark.h>

#include "qpartial/asymptotic.hpp"
#include "qpartial/surephase.hpp"

using namespace qpartial;

namespace {

void OptimumClosedForm(benchmark::State& state) {
    double Kt = 1.4;
    for (auto _ : state) {
        auto o = optimum_closed_form(Kt);
        benchmark::DoNotOptimize(&o);
        Kt = Kt < 1e6 ? Kt * 1.01 : 1.4;
    }
}
BENCHMARK(OptimumClosedForm);

void OptimumNumeric(benchmark::State& state) {
    for (auto _ : state) {
        auto o = optimum_numeric(4.0);
        benchmark::DoNotOptimize(&o);
    }
}
BENCHMARK(OptimumNumeric);

void MinimalScheduleDeskScale(benchmark::State& state) {
    const auto g = validate_geometry(state.range(0), 4, 1, 1);
    for (auto _ : state) {
        auto sol = minimal_schedule(g);
        benchmark::DoNotOptimize(&sol);
    }
}
BENCHMARK(MinimalScheduleDeskScale)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace
