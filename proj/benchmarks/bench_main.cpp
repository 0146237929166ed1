// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "beamdt/forward.hpp"
#include "beamdt/inversion.hpp"

using namespace beamdt;

namespace {

const double k0 = kTwoPi;

ComplexImage preset(int M) { return two_inclusion_phantom(ObjectGrid(M, 4.0), default_two_inclusion_preset()); }

void BM_Ndft2(benchmark::State& state) {
  const auto img = preset(static_cast<int>(state.range(0)));
  const MeasurementLattice lat(64, 64, k0);
  for (auto _ : state) benchmark::DoNotOptimize(kspace_samples(img, lat));
  state.SetItemsProcessed(state.iterations() * lat.rows() * lat.D());
}
BENCHMARK(BM_Ndft2)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_AngularSum(benchmark::State& state) {
  const auto method = state.range(0) == 0 ? AngularSum::kDirect : AngularSum::kFft;
  const MeasurementLattice lat(128, 400, k0);
  KSpaceSamples g(lat);
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = cd(std::sin(0.1 * i), std::cos(0.07 * i));
  const auto b = BeamProfile::gaussian(10.0);
  for (auto _ : state) benchmark::DoNotOptimize(measurements_from_kspace(g, b, 200, 5.0, method));
}
BENCHMARK(BM_AngularSum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Backpropagate(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const MeasurementLattice lat(M, 100, k0);
  KSpaceSamples g(lat);
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = cd(std::sin(0.1 * i), std::cos(0.07 * i));
  const ObjectGrid grid(M, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(backpropagate(g, grid));
}
BENCHMARK(BM_Backpropagate)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_TsvdSolve(benchmark::State& state) {
  const MeasurementLattice lat(128, 200, k0);
  MeasurementSet ms(lat, 5.0);
  for (std::size_t i = 0; i < ms.values.size(); ++i) ms.values[i] = cd(std::sin(0.3 * i), 0.0);
  const auto b = BeamProfile::gaussian(10.0);
  const auto coeffs = angular_coefficients(b, 12, lat.D());
  for (auto _ : state) benchmark::DoNotOptimize(tsvd_solve(ms, coeffs, TsvdConfig{12}));
}
BENCHMARK(BM_TsvdSolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
