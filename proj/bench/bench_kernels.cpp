// Serial reference vs OpenMP kernels on the same inputs.

#include <benchmark/benchmark.h>

#include <random>

#include "tgk/kernels.hpp"
#include "tgk/oracle.hpp"

namespace {

constexpr std::uint32_t kP = 7;

std::vector<std::uint32_t> random_matrix(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, kP - 1);
  std::vector<std::uint32_t> m(n * n);
  for (auto& v : m) v = dist(rng);
  return m;
}

template <bool Parallel>
void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(n, 1), b = random_matrix(n, 2);
  std::vector<std::uint32_t> c;
  for (auto _ : state) {
    if constexpr (Parallel) {
      tgk::kernels::matmul_parallel(a, b, c, n, n, n, kP);
    } else {
      tgk::kernels::matmul_serial(a, b, c, n, n, n, kP);
    }
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}

template <bool Parallel>
void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto src = random_matrix(n, 3);
  for (auto _ : state) {
    auto a = src;
    auto piv = Parallel ? tgk::kernels::rref_parallel(a, n, n, kP) : tgk::kernels::rref_serial(a, n, n, kP);
    benchmark::DoNotOptimize(piv.data());
  }
}

template <tgk::ExecPolicy Policy>
void BM_Census(benchmark::State& state) {
  for (auto _ : state) {
    auto entries = tgk::enumerate_tgroups(3, 3, Policy);
    benchmark::DoNotOptimize(entries.data());
  }
}

}  // namespace

BENCHMARK(BM_Matmul<false>)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Matmul<true>)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Rref<false>)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rref<true>)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Census<tgk::ExecPolicy::Serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Census<tgk::ExecPolicy::Parallel>)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
