#include <benchmark/benchmark.h>

#include "smoothpile/patterns.hpp"

using namespace smoothpile;

namespace {

void SmoothOnceSweep(benchmark::State& state) {
    const Value rows = state.range(0);
    const DomainPtr cyl = Domain::cylinder(3, -4, -rows / 2, rows / 2, 8);
    const IntegerField g = eval_on(edge_function(4, 3), cyl);
    for (auto _ : state) {
        SmoothStep step = smooth_once(g);
        benchmark::DoNotOptimize(step.next.values().data());
    }
    state.SetItemsProcessed(state.iterations() * cyl->interior_vertices().size());
}
BENCHMARK(SmoothOnceSweep)->Arg(64)->Arg(256)->Arg(1024);

void CanonicalSmoothing(benchmark::State& state) {
    const Value p = state.range(0);
    const Value q = state.range(1);
    for (auto _ : state) {
        PatternState ps = build_soliton(SolitonSpec{p, q});
        benchmark::DoNotOptimize(ps.theta.values().data());
    }
}
BENCHMARK(CanonicalSmoothing)->Args({1, 3})->Args({2, 3})->Args({3, 4});

void TriadBuild(benchmark::State& state) {
    const DirectionPair fig{-1, -1, 1, 0, 0, 0};
    for (auto _ : state) {
        PatternState ps = build_triad(fig, state.range(0));
        benchmark::DoNotOptimize(ps.theta.values().data());
    }
}
BENCHMARK(TriadBuild)->Arg(32)->Arg(64);

}  // namespace
