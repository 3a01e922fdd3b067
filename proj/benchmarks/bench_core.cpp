#include "qsa/crossing.hpp"
#include "qsa/dynamics.hpp"
#include "qsa/lightshift.hpp"
#include "qsa/quantum.hpp"
#include "qsa/statics.hpp"

#include <benchmark/benchmark.h>

using namespace qsa;

static void BM_Equilibrium(benchmark::State& st) {
    const auto sp = IonSpecies::calcium40();
    const int n = static_cast<int>(st.range(0));
    const auto pot = TrapPotential::axial(56e-6, rad(400e3), sp, rad(3e6), rad(3.1e6));
    for (auto _ : st) benchmark::DoNotOptimize(normal_modes(solve_equilibrium(pot, sp, {n, n}), pot));
}
BENCHMARK(BM_Equilibrium)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Calibration(benchmark::State& st) {
    const auto sp = IonSpecies::calcium40();
    for (auto _ : st) benchmark::DoNotOptimize(calibrate_double_well(rad(400e3), 6, 56e-6, sp, Orientation::Axial));
}
BENCHMARK(BM_Calibration)->Unit(benchmark::kMillisecond);

static void BM_CrossingFit(benchmark::State& st) {
    const auto spec = synth_crossing_spectrum(default_crossing_scan(rad(19e3), 6, rad(400e3), 0.0, 0.01, 1));
    for (auto _ : st) benchmark::DoNotOptimize(fit_avoided_crossing(spec));
}
BENCHMARK(BM_CrossingFit)->Unit(benchmark::kMillisecond);

static void BM_ExchangeTrajectory(benchmark::State& st) {
    const auto c = ExchangeConfig::switched_on(-7.5e3);
    for (auto _ : st) benchmark::DoNotOptimize(integrate_exchange(c));
}
BENCHMARK(BM_ExchangeTrajectory)->Unit(benchmark::kMillisecond);

static void BM_MSBlock(benchmark::State& st) {
    auto g = MSGateConfig::standard(MSCase::RedBoth, kTwoPi / 190e-6);
    g.heating = {2.6, 18.0};
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 1.0;
    const int c = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(ms_block_solution(g, rho, c));
}
BENCHMARK(BM_MSBlock)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_LightShiftScan(benchmark::State& st) {
    const auto sp = IonSpecies::calcium40();
    LightShiftTrap trap;
    trap.lz_over_dz = 0.43;
    const auto s = lightshift_setup(4, trap, sp);
    LightShiftConfig c;
    const double o1 = reference_rabi_frequency(c, s);
    for (auto _ : st) benchmark::DoNotOptimize(fidelity_scan_vs_omega(c, s, 3 * o1, 301));
}
BENCHMARK(BM_LightShiftScan)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
