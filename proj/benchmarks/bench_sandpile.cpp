#include <benchmark/benchmark.h>

#include <random>

#include "smoothpile/patterns.hpp"

using namespace smoothpile;

namespace {

void RelaxUniformPile(benchmark::State& state) {
    const Value side = state.range(0);
    const DomainPtr dom = Domain::box(0, side - 1, 0, side - 1, 1);
    SandpileState phi(dom, 0);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Value> grains(0, 7);
    for (VertexId v : dom->interior_vertices()) phi[v] = grains(rng);

    std::uint64_t topplings = 0;
    for (auto _ : state) {
        RelaxationOutcome r = relax(phi);
        topplings += r.topplings;
        benchmark::DoNotOptimize(r.final.field.values().data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(topplings));
}
BENCHMARK(RelaxUniformPile)->Arg(16)->Arg(32)->Arg(64);

void RelaxCenterPile(benchmark::State& state) {
    const Value side = state.range(0);
    const DomainPtr dom = Domain::box(0, side - 1, 0, side - 1, 1);
    SandpileState phi(dom, 0);
    phi[dom->vertex_at(Point{side / 2, side / 2})] = side * side;

    std::uint64_t topplings = 0;
    for (auto _ : state) {
        RelaxationOutcome r = relax(phi);
        topplings += r.topplings;
        benchmark::DoNotOptimize(r.final.field.values().data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(topplings));
}
BENCHMARK(RelaxCenterPile)->Arg(32)->Arg(64);

void WaveAcrossSoliton(benchmark::State& state) {
    const PatternState ps = build_soliton(SolitonSpec{2, 3});
    const Domain& dom = *ps.state.domain();
    const auto* cp = dom.cylinder_params();
    VertexId src = -1;
    for (Value y = cp->y1 - cp->guard - 6; src < 0 && y > 0; --y) {
        const VertexId v = dom.vertex_at(Point{0, y});
        if (ps.state[v] == 3) src = v;
    }

    for (auto _ : state) {
        WaveRecord rec = send_wave(ps.state, src);
        benchmark::DoNotOptimize(rec.result.field.values().data());
    }
}
BENCHMARK(WaveAcrossSoliton);

}  // namespace

BENCHMARK_MAIN();
