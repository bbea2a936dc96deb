// Serial reference sweeps against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "polykernel/dpp.hpp"
#include "polykernel/parallel.hpp"

using namespace polykernel;

namespace {

const KernelEvaluator& space(int n) {
  static std::map<int, KernelEvaluator> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_space(WeightModel::power(2), {2, n, static_cast<double>(n)})).first;
  return it->second;
}

std::vector<cplx> points(int count) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  std::vector<cplx> out;
  for (int i = 0; i < count; ++i) out.emplace_back(u(gen), u(gen));
  return out;
}

std::vector<KernelPair> pairs(int count) {
  const auto a = points(count), b = points(2 * count);
  std::vector<KernelPair> out;
  for (int i = 0; i < count; ++i) out.push_back({a[i], b[count + i]});
  return out;
}

void BM_kernel_serial(benchmark::State& st) {
  const auto& k = space(static_cast<int>(st.range(0)));
  const auto p = pairs(2048);
  for (auto _ : st) benchmark::DoNotOptimize(serial::weighted_kernel_grid(k, p));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(p.size()));
}

void BM_kernel_omp(benchmark::State& st) {
  const auto& k = space(static_cast<int>(st.range(0)));
  const auto p = pairs(2048);
  for (auto _ : st) benchmark::DoNotOptimize(omp::weighted_kernel_grid(k, p));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(p.size()));
}

void BM_intensity_serial(benchmark::State& st) {
  const auto& k = space(static_cast<int>(st.range(0)));
  const auto z = points(4096);
  for (auto _ : st) benchmark::DoNotOptimize(serial::one_point_grid(k, z));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(z.size()));
}

void BM_intensity_omp(benchmark::State& st) {
  const auto& k = space(static_cast<int>(st.range(0)));
  const auto z = points(4096);
  for (auto _ : st) benchmark::DoNotOptimize(omp::one_point_grid(k, z));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(z.size()));
}

void BM_berezin_serial(benchmark::State& st) {
  const auto& k = space(static_cast<int>(st.range(0)));
  const auto z = points(4096);
  for (auto _ : st) benchmark::DoNotOptimize(serial::berezin_grid(k, 0.2, z));
}

void BM_berezin_omp(benchmark::State& st) {
  const auto& k = space(static_cast<int>(st.range(0)));
  const auto z = points(4096);
  for (auto _ : st) benchmark::DoNotOptimize(omp::berezin_grid(k, 0.2, z));
}

void BM_sample_batch(benchmark::State& st) {
  const auto& k = space(static_cast<int>(st.range(0)));
  const RadialEquilibrium eq(WeightModel::power(2));
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(sample_many(k, eq, seed++, 8));
}

}  // namespace

BENCHMARK(BM_kernel_serial)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel_omp)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_intensity_serial)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_intensity_omp)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_berezin_serial)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_berezin_omp)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sample_batch)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
