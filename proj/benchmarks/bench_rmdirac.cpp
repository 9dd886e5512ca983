#include <memory>

#include <benchmark/benchmark.h>

#include "rmdirac/oracle.hpp"
#include "rmdirac/specfun.hpp"
#include "rmdirac/spectrum.hpp"
#include "rmdirac/spinors.hpp"

using namespace rmdirac;

namespace {

const ReflectionlessParams kWell{4.0, 0.8, std::nullopt};
const SymmetrySector kSpin{Symmetry::spin, -1, 5.0, 0.0};

void BM_FindLevels(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(find_levels(kWell, kSpin, {}, n_max));
}
BENCHMARK(BM_FindLevels)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_FindLevelsPekeris(benchmark::State& state) {
    const StandardRMParams pot{3.0, 0.3, 0.8};
    const SymmetrySector s{Symmetry::spin, -2, 5.0, 0.0};
    const PekerisCoefficients pc = pekeris_from_taylor_match(0.8, 1.5);
    for (auto _ : state) benchmark::DoNotOptimize(find_levels(pot, s, pc, 4));
}
BENCHMARK(BM_FindLevelsPekeris)->Unit(benchmark::kMillisecond);

void BM_SpinResidual(benchmark::State& state) {
    const RosenMorseGeneral pot{3.0, 0.4, 0.8};
    const PekerisCoefficients pc = pekeris_from_taylor_match(0.8, 1.5);
    const SymmetrySector s{Symmetry::spin, -2, 5.0, 0.0};
    double e = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spin_residual_rm(e, 1, pot, s, pc));
        e = e < 4.0 ? e + 1e-3 : 1.0;
    }
}
BENCHMARK(BM_SpinResidual);

void BM_OracleLevels(benchmark::State& state) {
    OracleConfig oc;
    oc.grid_points = static_cast<int>(state.range(0));
    oc.richardson_levels = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(self_consistent_levels(kWell, kSpin, {}, 2, oc));
}
BENCHMARK(BM_OracleLevels)->Args({2001, 1})->Args({8001, 1})->Args({8001, 3})->Unit(benchmark::kMillisecond);

void BM_Hyp2F1(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    double z = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::hyp2f1_terminating(n, 2.3, -0.7, z));
        z = z < 0.9 ? z + 1e-4 : 0.1;
    }
}
BENCHMARK(BM_Hyp2F1)->Arg(2)->Arg(10)->Arg(40);

void BM_JacobiP(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    double x = -0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::jacobi_p(n, -1.3, 2.1, x));
        x = x < 0.9 ? x + 1e-4 : -0.9;
    }
}
BENCHMARK(BM_JacobiP)->Arg(2)->Arg(10)->Arg(40);

void BM_LnGamma(benchmark::State& state) {
    double x = -20.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::ln_gamma(x));
        x = x < 40.0 ? x + 0.37 : -20.5;
    }
}
BENCHMARK(BM_LnGamma);

void BM_Normalize(benchmark::State& state) {
    const auto levels = find_levels(kWell, kSpin, {}, 3);
    const EnergyLevel* level = nullptr;
    for (const auto& l : levels)
        if (l.admissible && l.n == static_cast<int>(state.range(0))) level = &l;
    if (!level) {
        state.SkipWithError("level not found");
        return;
    }
    auto model = std::make_shared<const SpinorModel>(*level, kWell, kSpin, PekerisCoefficients{});
    GridOptions go;
    go.r_scale = 1.0 / model->alpha();
    const SpinorState raw = build_state(model, go);
    for (auto _ : state) benchmark::DoNotOptimize(normalize(raw));
}
BENCHMARK(BM_Normalize)->Arg(0)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
