#include <benchmark/benchmark.h>

#include "pvsim/environment.hpp"
#include "pvsim/metrics.hpp"
#include "pvsim/panel.hpp"
#include "pvsim/power_stage.hpp"
#include "pvsim/sim_engine.hpp"

namespace {

const pvsim::PanelParams kPanel = pvsim::reference_panel();
const pvsim::EnvSample kStc{1000.0, 25.0, 0.0};

void BM_PanelCurrent(benchmark::State& state) {
    double v = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pvsim::panel_current(v, kStc, kPanel));
        v = v >= 35.0 ? 0.0 : v + 0.37;  // sweep the curve
    }
}
BENCHMARK(BM_PanelCurrent);

void BM_OpenCircuitVoltage(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(pvsim::open_circuit_voltage(kStc, kPanel));
}
BENCHMARK(BM_OpenCircuitVoltage);

void BM_TrueMpp(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(pvsim::true_mpp(kStc, kPanel));
}
BENCHMARK(BM_TrueMpp);

void BM_SimulateStc(benchmark::State& state) {
    pvsim::Scenario sc = pvsim::canonical_scenarios()[0].second;
    sc.controller.name = state.range(0) == 0 ? "hybrid" : "po";
    for (auto _ : state) benchmark::DoNotOptimize(pvsim::simulate(sc));
    state.SetItemsProcessed(int64_t(state.iterations()) *
                            int64_t(pvsim::step_count(sc.duration, sc.dt)));
}
BENCHMARK(BM_SimulateStc)->Arg(0)->Arg(1);

void BM_Thd(benchmark::State& state) {
    pvsim::WaveformSamples w;
    w.fundamental = 50.0;
    w.sample_rate = 50.0 * 256;
    for (int j = 0; j < 256 * 8; ++j)
        w.samples.push_back(j % 256 < 128 ? 1.0 : -1.0);
    for (auto _ : state) benchmark::DoNotOptimize(pvsim::thd(w, 50));
}
BENCHMARK(BM_Thd);

}  // namespace

BENCHMARK_MAIN();
