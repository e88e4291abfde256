#include <benchmark/benchmark.h>

#include "skin/damping.hpp"
#include "skin/dynamics.hpp"
#include "skin/linalg.hpp"
#include "skin/majorana.hpp"
#include "skin/oracle.hpp"
#include "skin/thirdq.hpp"

using namespace skin;

namespace {

SshParams chain(int n_cells) {
    SshParams p;
    p.n_cells = n_cells;
    p.t1 = 0.8;
    p.t2 = 1.0;
    p.gamma_l = 0.2;
    p.gamma_g = 0.2;
    return p;
}

}  // namespace

static void BM_RapidityDecompose(benchmark::State& st) {
    const auto form = to_majorana(build_ssh_model(chain(static_cast<int>(st.range(0))), Boundary::Open));
    for (auto _ : st) benchmark::DoNotOptimize(rapidity_decompose(form));
}
BENCHMARK(BM_RapidityDecompose)->Arg(5)->Arg(10)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_Expm(benchmark::State& st) {
    const Mat X = build_damping_matrix(chain(static_cast<int>(st.range(0))), Boundary::Open).X * 5.0;
    for (auto _ : st) benchmark::DoNotOptimize(linalg::expm(X));
}
BENCHMARK(BM_Expm)->Arg(10)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

static void BM_Lyapunov(benchmark::State& st) {
    const auto model = build_ssh_model(chain(static_cast<int>(st.range(0))), Boundary::Open);
    const Mat X = damping_matrix(model);
    const Mat S = gain_source(model);
    for (auto _ : st) benchmark::DoNotOptimize(linalg::lyapunov(X, S));
}
BENCHMARK(BM_Lyapunov)->Arg(10)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

static void BM_InterferenceAmplitudes(benchmark::State& st) {
    const auto dec = rapidity_decompose(to_majorana(build_ssh_model(chain(static_cast<int>(st.range(0))), Boundary::Open)));
    const auto amps = f2_coefficients(dec, adjoint_two_point_table(InitialGaussianState::unit_filling(dec.n_sites())));
    for (auto _ : st) benchmark::DoNotOptimize(interference_amplitudes(dec, amps));
}
BENCHMARK(BM_InterferenceAmplitudes)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_DenseSteadyState(benchmark::State& st) {
    const auto model = build_ssh_model(chain(static_cast<int>(st.range(0))), Boundary::Open);
    for (auto _ : st) benchmark::DoNotOptimize(oracle::dense_steady_state(model));
}
BENCHMARK(BM_DenseSteadyState)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
