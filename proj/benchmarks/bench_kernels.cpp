#include "seirs/analysis.hpp"
#include "seirs/history.hpp"
#include "seirs/simulator.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace seirs;

DimensionlessParams rates(double beta)
{
    DimensionlessParams p;
    p.B = 8.476678e-06;
    p.mu = 8.476678e-06;
    p.beta = beta;
    p.mu_v = 42.85714;
    p.d = 0.0001761252;
    p.alpha = 0.08571429;
    return p;
}

DelaySpec uniform(double lo, double hi, int nodes)
{
    DensityShape shape;
    shape.family = DensityFamily::Uniform;
    return DelaySpec::from_shape(shape, lo, hi, nodes);
}

// One node means the Table 1 point delays.
DelaySet distributed(int nodes)
{
    if (nodes == 1) {
        return {DelaySpec::point_mass(0.105), DelaySpec::point_mass(0.175),
                DelaySpec::point_mass(2.129167)};
    }
    return {uniform(0.07, 0.14, nodes), uniform(0.12, 0.23, nodes), uniform(1.5, 2.7, nodes)};
}

HistoryBuffer wavy_history(const DelaySet& delays, double dt)
{
    return init_history(
        [](double t) {
            const double w = 0.1 * std::sin(3.0 * t);
            return State{0.4 + w, 0.2, 0.25 - w, 0.1};
        },
        delays, dt);
}

void BM_KernelSingle(benchmark::State& state)
{
    const auto delays = distributed(static_cast<int>(state.range(0)));
    const auto history = wavy_history(delays, 1e-3);
    const auto g = IncidenceModel::holling2(0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_single(history, delays.t1, g, 42.85714, 0.0));
    }
}
BENCHMARK(BM_KernelSingle)->Arg(1)->Arg(17)->Arg(65)->Arg(257);

void BM_KernelDouble(benchmark::State& state)
{
    const auto delays = distributed(static_cast<int>(state.range(0)));
    const auto history = wavy_history(delays, 1e-3);
    const auto g = IncidenceModel::holling2(0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            kernel_double(history, delays.t1, delays.t2, g, 42.85714, 8.476678e-06, 0.0));
    }
}
BENCHMARK(BM_KernelDouble)->Arg(1)->Arg(9)->Arg(17)->Arg(65);

void BM_KernelImmunity(benchmark::State& state)
{
    const auto delays = distributed(static_cast<int>(state.range(0)));
    const auto history = wavy_history(delays, 1e-3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernel_immunity(history, delays.t3, 8.476678e-06, 0.0));
    }
}
BENCHMARK(BM_KernelImmunity)->Arg(1)->Arg(257);

void BM_Analyze(benchmark::State& state)
{
    const auto p = rates(7.941616);
    const DelaySet delays{DelaySpec::point_mass(0.105), DelaySpec::point_mass(0.175),
                          DelaySpec::point_mass(2.129167)};
    const auto g = IncidenceModel::holling2(0.05);
    for (auto _ : state) benchmark::DoNotOptimize(analyze(p, g, delays));
}
BENCHMARK(BM_Analyze);

// Simulated horizon in model time units; the Table 1 runs use 1000.
void BM_SimulatePoint(benchmark::State& state)
{
    const auto p = rates(0.02146383);
    const DelaySet delays{DelaySpec::point_mass(0.105), DelaySpec::point_mass(0.175),
                          DelaySpec::point_mass(2.129167)};
    const auto g = IncidenceModel::holling2(0.05);
    SimulationConfig cfg;
    cfg.t_end = static_cast<double>(state.range(0));
    cfg.record_stride = 100;
    for (auto _ : state) benchmark::DoNotOptimize(simulate(p, g, delays, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.t_end / cfg.dt));
}
BENCHMARK(BM_SimulatePoint)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SimulateDistributed(benchmark::State& state)
{
    const auto p = rates(0.02146383);
    const auto delays = distributed(static_cast<int>(state.range(0)));
    const auto g = IncidenceModel::holling2(0.05);
    SimulationConfig cfg;
    cfg.t_end = 5.0;
    cfg.record_stride = 100;
    for (auto _ : state) benchmark::DoNotOptimize(simulate(p, g, delays, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.t_end / cfg.dt));
}
BENCHMARK(BM_SimulateDistributed)->Arg(9)->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
