#include <benchmark/benchmark.h>

#include "spdelab/lattice.hpp"
#include "spdelab/noise.hpp"

using namespace spdelab;

static void BM_SamplePath(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const int n_fine = static_cast<int>(state.range(1));
  auto lat = make_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, M);
  const auto cov = CovarianceSpec::power_law(5.1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    WienerPath p = sample_path(++seed, cov, lat, n_fine, 1.0);
    benchmark::DoNotOptimize(p.incr.data());
  }
  state.SetItemsProcessed(state.iterations() * M * n_fine);
}
BENCHMARK(BM_SamplePath)->Args({1024, 512})->Args({1024, 4096});

static void BM_Coarsen(benchmark::State& state) {
  auto lat = make_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, 1024);
  const WienerPath p = sample_path(7, CovarianceSpec::power_law(5.1), lat, 4096, 1.0);
  for (auto _ : state) {
    IncrementGrid g = coarsen(p, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(g.d.data());
  }
}
BENCHMARK(BM_Coarsen)->Arg(8)->Arg(128);

BENCHMARK_MAIN();
