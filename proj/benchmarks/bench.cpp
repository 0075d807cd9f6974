#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "hsdp/delivery.hpp"
#include "hsdp/design.hpp"
#include "hsdp/mapda.hpp"
#include "hsdp/packing.hpp"

namespace {

using namespace hsdp;

void BM_ConstructPacking115(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(construct_hsdp({4, 2, {2, 2}, 115}));
}
BENCHMARK(BM_ConstructPacking115);

void BM_VerifyPacking115(benchmark::State& state) {
  Hsdp packing = construct_hsdp({4, 2, {2, 2}, 115});
  for (auto _ : state) benchmark::DoNotOptimize(verify_hsdp(packing));
}
BENCHMARK(BM_VerifyPacking115);

void BM_BuildArray567(benchmark::State& state) {
  Hsdp packing = construct_hsdp(closed_form_point(4, 4, 2).construction());
  for (auto _ : state) benchmark::DoNotOptimize(build_mapda(packing));
}
BENCHMARK(BM_BuildArray567);

void BM_VerifyArray567(benchmark::State& state) {
  Mapda array = build_mapda(construct_hsdp(closed_form_point(4, 4, 2).construction()));
  for (auto _ : state) benchmark::DoNotOptimize(verify_mapda(array));
}
BENCHMARK(BM_VerifyArray567);

void BM_ZfPrecoder(benchmark::State& state) {
  const int antennas = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::vector<std::vector<std::complex<double>>> rows(
      static_cast<std::size_t>(antennas - 1),
      std::vector<std::complex<double>>(static_cast<std::size_t>(antennas)));
  for (auto& row : rows)
    for (auto& e : row) e = {normal(rng), normal(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(zf_precoder(rows, antennas));
}
BENCHMARK(BM_ZfPrecoder)->Arg(4)->Arg(8)->Arg(16);

void BM_Simulate115(benchmark::State& state) {
  Mapda array = build_mapda(construct_hsdp({4, 2, {2, 2}, 115}));
  ChannelMatrix channel = ChannelMatrix::random(115, 4, 1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(array, channel));
}
BENCHMARK(BM_Simulate115);

void BM_SearchBest567(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(search_best(567, 4, 2));
}
BENCHMARK(BM_SearchBest567);

}  // namespace

BENCHMARK_MAIN();
