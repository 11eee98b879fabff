// Serial reference vs OpenMP paths for the three parallel kernels.
// Thread count follows OMP_NUM_THREADS.

#include "lqso/bounds.hpp"
#include "lqso/orbit_grid.hpp"
#include "lqso/particles.hpp"

#include <benchmark/benchmark.h>

using namespace lqso;

namespace {

void orbit_grid(benchmark::State& state, Execution exec)
{
    const DensityOrbit orbit(KernelParams(0.8), CdfMeasure::power(2), 40);
    const auto xs = linspace(0.0, 1.0, std::size_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_orbit_grid(orbit, xs, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void particle_step(benchmark::State& state, Execution exec)
{
    const auto e = sample_initial(parse_measure("uniform"), std::size_t(state.range(0)), 1);
    const KernelParams k(0.3);
    for (auto _ : state)
        benchmark::DoNotOptimize(step_generation(k, e, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void particle_step_reference(benchmark::State& state)
{
    const auto e = sample_initial(parse_measure("uniform"), std::size_t(state.range(0)), 1);
    const KernelParams k(0.3);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::step_generation(k, e));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bounds(benchmark::State& state, Execution exec)
{
    const KernelParams k(0.9);
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_bounds(k, CdfMeasure::uniform(), 30, std::size_t(state.range(0)), exec));
}

} // namespace

BENCHMARK_CAPTURE(orbit_grid, serial, Execution::serial)->Arg(10001)->Arg(100001);
BENCHMARK_CAPTURE(orbit_grid, parallel, Execution::parallel)->Arg(10001)->Arg(100001);
BENCHMARK_CAPTURE(particle_step, serial, Execution::serial)->Arg(100000)->Arg(1000000);
BENCHMARK_CAPTURE(particle_step, parallel, Execution::parallel)->Arg(100000)->Arg(1000000);
BENCHMARK(particle_step_reference)->Arg(100000)->Arg(1000000);
BENCHMARK_CAPTURE(bounds, serial, Execution::serial)->Arg(10001);
BENCHMARK_CAPTURE(bounds, parallel, Execution::parallel)->Arg(10001);

BENCHMARK_MAIN();
