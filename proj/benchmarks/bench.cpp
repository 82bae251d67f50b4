#include <benchmark/benchmark.h>

#include "triwave/diagnostics.hpp"
#include "triwave/dynamics.hpp"
#include "triwave/exact.hpp"
#include "triwave/stability.hpp"

using namespace triwave;

namespace {

TriField psi_triple(const Grid& g) {
  const ComplexField psi = psi_omega({0.5, 2.0, 1.0, 1.0}, g);
  return TriField(g, psi, psi, psi);
}

void BM_SecondDerivative(benchmark::State& st) {
  const Grid g(40.0, static_cast<std::size_t>(st.range(0)));
  const ComplexField f = psi_omega({0.5, 2.0, 1.0, 1.0}, g);
  for (auto _ : st) benchmark::DoNotOptimize(second_derivative(f, g));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_SecondDerivative)->RangeMultiplier(2)->Range(256, 8192)->Complexity();

void BM_StrangStep(benchmark::State& st) {
  const Grid g(40.0, static_cast<std::size_t>(st.range(0)));
  TriField v = psi_triple(g);
  const Params prm;
  for (auto _ : st) {
    v = step(v, 1e-3, prm);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_StrangStep)->Arg(1024)->Arg(4096);

void BM_FlowIterations(benchmark::State& st) {
  const Grid g(40.0, 1024);
  FlowConfig cfg;
  cfg.restarts = 1;
  cfg.max_iters = 200000;
  for (auto _ : st) benchmark::DoNotOptimize(minimize_i(PerComponent{1.0, 2.0, 0.5}, Params{}, g, cfg));
}
BENCHMARK(BM_FlowIterations)->Unit(benchmark::kMillisecond);

void BM_OrbitalDistance(benchmark::State& st) {
  const Grid g(40.0, 1024);
  const TriField r = psi_triple(g);
  const TriField v = rotate(translate(r, 3.1), 0.4, 1.2) + smooth_noise(g, 1e-2, 1);
  for (auto _ : st) benchmark::DoNotOptimize(orbital_distance(v, r));
}
BENCHMARK(BM_OrbitalDistance)->Unit(benchmark::kMillisecond);

void BM_Rearrangement(benchmark::State& st) {
  const Grid g(40.0, 1024);
  const TriField v = random_test_field(g, 3);
  for (auto _ : st) benchmark::DoNotOptimize(rearranged_modulus(v));
}
BENCHMARK(BM_Rearrangement);

}  // namespace

BENCHMARK_MAIN();
