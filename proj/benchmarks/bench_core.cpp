#include "cutset/analysis.hpp"
#include "cutset/bump_kernel.hpp"
#include "cutset/evaluator.hpp"
#include "cutset/function_builder.hpp"

#include <benchmark/benchmark.h>

using namespace cutset;

namespace {

const ValidatedSet& ternary()
{
    static const ValidatedSet vs = validate_spec(SetSpec{{CentralCantorSpec{XiRule::ternary(), {0, 1}}}});
    return vs;
}

void BM_KernelJet(benchmark::State& state)
{
    const int order = static_cast<int>(state.range(0));
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(h_jet(x, order));
        x = x < 0.9 ? x + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_KernelJet)->Arg(0)->Arg(5)->Arg(12);

void BM_BuildPrescribed(benchmark::State& state)
{
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_prescribed_cutset(ternary(), depth));
}
BENCHMARK(BM_BuildPrescribed)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Eval(benchmark::State& state)
{
    const PiecewiseFunction pf = build_prescribed_cutset(ternary(), 12);
    const int order = static_cast<int>(state.range(0));
    std::size_t i = 0;
    for (auto _ : state) {
        const double x = static_cast<double>(i++ % 4096) / 4096.0;
        benchmark::DoNotOptimize(eval(pf, x, order));
    }
}
BENCHMARK(BM_Eval)->Arg(0)->Arg(5);

void BM_VerifyGroundTruth(benchmark::State& state)
{
    const PiecewiseFunction pf = build_prescribed_cutset(ternary(), 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_ground_truth(pf));
}
BENCHMARK(BM_VerifyGroundTruth)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
