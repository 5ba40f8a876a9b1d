// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "heatcoeff/fit.hpp"
#include "heatcoeff/oracle/heat_content.hpp"
#include "heatcoeff/oracle/heat_trace.hpp"
#include "heatcoeff/oracle/spectrum.hpp"

using namespace heatcoeff;

namespace {

const oracle::Spectrum& disk_spectrum() {
    static const oracle::Spectrum s = [] {
        oracle::SpectrumSpec spec;
        spec.problem = oracle::Problem::Disk;
        spec.lambda_max = 4e5;
        return oracle::eigenvalues(spec);
    }();
    return s;
}

void BM_SpectralSumSerial(benchmark::State& st) {
    const auto& s = disk_spectrum();
    for (auto _ : st) benchmark::DoNotOptimize(oracle::spectral_sum_serial(s.values, s.multiplicity, 1e-4));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(s.values.size()));
}

void BM_SpectralSumParallel(benchmark::State& st) {
    const auto& s = disk_spectrum();
    for (auto _ : st) benchmark::DoNotOptimize(oracle::spectral_sum_parallel(s.values, s.multiplicity, 1e-4));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(s.values.size()));
}

void BM_BesselZeros(benchmark::State& st) {
    const bool parallel = st.range(0) != 0;
    for (auto _ : st) benchmark::DoNotOptimize(oracle::bessel_zeros(300.0, parallel));
}

void BM_RodContentSamples(benchmark::State& st) {
    const bool parallel = st.range(0) != 0;
    RodProblem rod;
    rod.left = rod.right = {BoundaryKind::Robin, 1.0, 0.0, 0.0};
    const auto ts = geometric_grid(1e-3, 1e-2, 16);
    for (auto _ : st) benchmark::DoNotOptimize(oracle::rod_content_samples(rod, ts, {}, parallel));
}

}  // namespace

BENCHMARK(BM_SpectralSumSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SpectralSumParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BesselZeros)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RodContentSamples)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond)->Iterations(3);

BENCHMARK_MAIN();
