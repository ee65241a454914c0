// Parallel kernels against their serial brute-force references.

#include <benchmark/benchmark.h>

#include "tqf/lattice_count.hpp"
#include "tqf/local.hpp"
#include "tqf/parallel.hpp"
#include "tqf/reference.hpp"

namespace {

const tqf::TernaryForm kForm{7, 11, 21, 11, 2, 4};

void BM_theta_reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tqf::reference::theta(kForm, state.range(0)));
}

void BM_theta(benchmark::State& state) {
  tqf::set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(tqf::theta(kForm, state.range(0)));
  tqf::set_thread_count(0);
}

void BM_rep_count_reference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tqf::reference::rep_count(kForm, state.range(0)));
}

void BM_rep_count(benchmark::State& state) {
  tqf::set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(tqf::rep_count(kForm, state.range(0)));
  tqf::set_thread_count(0);
}

void BM_count_mod_reference(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tqf::reference::count_solutions_mod(kForm, 5, 3, t));
}

void BM_count_mod(benchmark::State& state) {
  const auto t = static_cast<int>(state.range(0));
  tqf::set_thread_count(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(tqf::count_solutions_mod(kForm, 5, 3, t));
  tqf::set_thread_count(0);
}

}  // namespace

BENCHMARK(BM_theta_reference)->Arg(2000)->Arg(8000);
BENCHMARK(BM_theta)->Args({2000, 1})->Args({2000, 4})->Args({8000, 1})->Args({8000, 4});
BENCHMARK(BM_rep_count_reference)->Arg(20000);
BENCHMARK(BM_rep_count)->Args({20000, 1})->Args({20000, 4});
BENCHMARK(BM_count_mod_reference)->Arg(3)->Arg(4);
BENCHMARK(BM_count_mod)->Args({3, 1})->Args({4, 1})->Args({4, 4})->Args({7, 1})->Args({7, 4});

BENCHMARK_MAIN();
