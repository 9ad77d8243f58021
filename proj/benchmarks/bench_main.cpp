#include <benchmark/benchmark.h>

#include <cmath>

#include "magvac/emission.hpp"
#include "magvac/rng.hpp"
#include "magvac/sampler.hpp"
#include "magvac/specfun.hpp"
#include "magvac/units.hpp"
#include "magvac/vacuum.hpp"

using namespace magvac;

namespace {

const auto kConsts = units::PhysicalConstants::paper();

void BM_HurwitzZeta(benchmark::State& state) {
  double q = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::hurwitz_zeta(-2.5, q));
    q = q < 50.0 ? q * 1.01 : 0.3;
  }
}
BENCHMARK(BM_HurwitzZeta);

void BM_RateKernel(benchmark::State& state) {
  const auto sm = vacuum::FermionSet::standard_model();
  const double eB = 1e-2 * kConsts.m_e_eV * kConsts.m_e_eV;
  const int n0 = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(emission::rate_kernel(std::sqrt(eB), n0, sm, eB, kConsts));
  }
}
BENCHMARK(BM_RateKernel)->Arg(1)->Arg(8);

void BM_Spectrum(benchmark::State& state) {
  const auto sm = vacuum::FermionSet::standard_model();
  const auto B = units::FieldStrength::from_gauss(1e13, kConsts);
  emission::SpectrumOptions opt;
  opt.mode = state.range(0) ? emission::SpectrumMode::profile : emission::SpectrumMode::lines;
  for (auto _ : state) {
    benchmark::DoNotOptimize(emission::spectrum(B, sm, 4, {64, 0.0}, kConsts, opt));
  }
}
BENCHMARK(BM_Spectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SampleEvents(benchmark::State& state) {
  const auto sm = vacuum::FermionSet::standard_model();
  const auto table = emission::spectrum(units::FieldStrength::from_gauss(1e13, kConsts), sm, 4, {64, 0.0}, kConsts);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler::sample_events(table, n, 7, kConsts));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_SampleEvents)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Philox(benchmark::State& state) {
  const rng::Stream s(42, 0);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(s.uniforms(i++));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_Philox);

}  // namespace
BENCHMARK_MAIN();
