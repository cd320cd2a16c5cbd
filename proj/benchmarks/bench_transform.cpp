#include <benchmark/benchmark.h>

#include "spdelab/state.hpp"
#include "spdelab/transform.hpp"

using namespace spdelab;

static void BM_TorusRoundTrip(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  auto lat = make_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, M);
  const SpectralTransform& tr = cached_transform(lat);
  std::vector<cplx> c(M), v(tr.grid_size());
  for (int i = 0; i < M; ++i) c[i] = cplx(1.0 / (1 + i), 0.1);
  for (auto _ : state) {
    tr.to_grid(c, v);
    tr.to_coeffs(v, c);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * M);
}
BENCHMARK(BM_TorusRoundTrip)->Arg(128)->Arg(1024)->Arg(4096);

static void BM_DirichletRoundTrip(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  auto lat = make_lattice(BasisKind::DirichletSine, GeneratorKind::Wave, M);
  const SpectralTransform& tr = cached_transform(lat);
  std::vector<cplx> c(M), v(tr.grid_size());
  for (int i = 0; i < M; ++i) c[i] = cplx(1.0 / (1 + i), 0.0);
  for (auto _ : state) {
    tr.to_grid(c, v);
    tr.to_coeffs(v, c);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * M);
}
BENCHMARK(BM_DirichletRoundTrip)->Arg(127)->Arg(1023);

BENCHMARK_MAIN();
