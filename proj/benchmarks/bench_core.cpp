#include <benchmark/benchmark.h>

#include "krauskit/channel.hpp"
#include "krauskit/eig.hpp"
#include "krauskit/generators.hpp"
#include "krauskit/spectral.hpp"
#include "krauskit/structure.hpp"
#include "krauskit/trajectory.hpp"

namespace {

using namespace kraus;

void BM_apply_heisenberg(benchmark::State& state) {
  const std::size_t d = state.range(0);
  const KrausFamily f = random_kraus_isometry(d, 4, 1);
  Rng rng(2);
  const ComplexMatrix x = hermitian_part(random_gaussian_matrix(d, d, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply(f, x, Picture::Heisenberg));
  }
}
BENCHMARK(BM_apply_heisenberg)->Arg(8)->Arg(16)->Arg(32);

void BM_superoperator_build(benchmark::State& state) {
  const std::size_t d = state.range(0);
  const KrausFamily f = random_kraus_isometry(d, 4, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(superoperator(f, Picture::Schrodinger));
  }
}
BENCHMARK(BM_superoperator_build)->Arg(4)->Arg(8)->Arg(16);

void BM_hermitian_eig(benchmark::State& state) {
  const std::size_t d = state.range(0);
  Rng rng(3);
  const ComplexMatrix h = hermitian_part(random_gaussian_matrix(d, d, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eig(h));
  }
}
BENCHMARK(BM_hermitian_eig)->Arg(8)->Arg(16)->Arg(32);

void BM_cesaro_stationary(benchmark::State& state) {
  const std::size_t d = state.range(0);
  const KrausFamily f = random_kraus_isometry(d, 2, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cesaro_stationary(f));
  }
}
BENCHMARK(BM_cesaro_stationary)->Arg(4)->Arg(8);

void BM_simultaneous_diagonalize(benchmark::State& state) {
  const std::size_t d = state.range(0);
  const KrausFamily f = random_commuting_normal(d, 3, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simultaneous_diagonalize(f));
  }
}
BENCHMARK(BM_simultaneous_diagonalize)->Arg(8)->Arg(16);

void BM_enumerate_measure(benchmark::State& state) {
  const std::size_t length = state.range(0);
  const KrausFamily f = cyclic_shift_family(4);
  ComplexMatrix psi(4, 1);
  psi(0, 0) = Cx{1.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_measure(f, psi, length));
  }
}
BENCHMARK(BM_enumerate_measure)->Arg(6)->Arg(10)->Arg(14);

void BM_sample_trajectory(benchmark::State& state) {
  const KrausFamily f = cyclic_shift_family(8);
  ComplexMatrix psi(8, 1);
  psi(0, 0) = Cx{1.0, 0.0};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_trajectory(f, psi, 64, seed++));
  }
}
BENCHMARK(BM_sample_trajectory);

}  // namespace

BENCHMARK_MAIN();
