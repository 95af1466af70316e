#include <cmath>

#include <benchmark/benchmark.h>

#include "intquant/affine.hpp"
#include "intquant/angle.hpp"
#include "intquant/fock.hpp"
#include "intquant/quantizer.hpp"
#include "intquant/weights.hpp"

using namespace intquant;

static void BM_Displacement(benchmark::State& st) {
    const int dim = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(displacement(PhasePoint(1.3, -0.7), dim));
}
BENCHMARK(BM_Displacement)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_QuantizeDirect(benchmark::State& st) {
    const int dim = static_cast<int>(st.range(0));
    const PhaseGrid grid = PhaseGrid::make(64, 128);
    const PhaseFunction f = gaussian(1.2);
    for (auto _ : st) benchmark::DoNotOptimize(quantize_direct(f, cahill_glauber(-1.0), dim, grid));
}
BENCHMARK(BM_QuantizeDirect)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_QuantizeExactPolynomial(benchmark::State& st) {
    const auto terms = *named_function("zzbar").poly;
    for (auto _ : st) benchmark::DoNotOptimize(quantize_polynomial_exact(terms, cahill_glauber(-2.0), 64));
}
BENCHMARK(BM_QuantizeExactPolynomial)->Unit(benchmark::kMicrosecond);

static void BM_AngleSymbol(benchmark::State& st) {
    const double J = static_cast<double>(st.range(0));
    const SineSeriesControl ctl = default_series_control(J);
    double g = 0.0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(angle_lower_symbol(ActionAnglePoint::make(J, g), ctl));
        g += 0.1;
    }
}
BENCHMARK(BM_AngleSymbol)->Arg(1)->Arg(25)->Arg(400)->Unit(benchmark::kMicrosecond);

static void BM_KineticEigenvalues(benchmark::State& st) {
    const double h = 40.0 / static_cast<double>(st.range(0));
    const FiducialVector psi = build_fiducial(1.0, 1.0, HalfLineGrid::make(h, 40.0));
    const TridiagonalOperator T = affine_kinetic(psi);
    for (auto _ : st) benchmark::DoNotOptimize(T.eigenvalues());
}
BENCHMARK(BM_KineticEigenvalues)->Arg(2500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
