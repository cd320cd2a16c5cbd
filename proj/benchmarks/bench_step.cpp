#include <benchmark/benchmark.h>

#include "spdelab/config.hpp"
#include "spdelab/integrate.hpp"
#include "spdelab/models.hpp"
#include "spdelab/noise.hpp"
#include "spdelab/rng.hpp"

using namespace spdelab;

namespace {

ExperimentConfig base_config(const char* noise_mode) {
  ExperimentConfig c;
  c.model.M = 1024;
  c.model.noise_mode = noise_mode;
  c.model.covariance.kind = "power_law";
  c.model.covariance.beta = 5.1;
  c.model.u0.kind = "inverse_power";
  c.model.u0.exponent = 6.0;
  if (std::string(noise_mode) != "additive") c.model.psi = "identity";
  return c;
}

}  // namespace

static void BM_StepAdditive(benchmark::State& state) {
  const auto config = base_config("additive");
  const Model model = build_model(config);
  auto lat = model_lattice_ptr(model);
  const double k = 1.0 / 64;
  const auto R = discrete_propagator(SchemeSpec::crank_nicolson(), *lat, k);
  const WienerPath path = sample_path(1, model_covariance(model), lat, 64, 1.0);
  const IncrementGrid grid = coarsen(path, 1);
  SpectralState u = model_initial_state(model);
  int j = 0;
  for (auto _ : state) {
    u = step(model, R, u, j * k, k, grid.step(j % 64));
    j = (j + 1) % 64;
    benchmark::DoNotOptimize(u.c.data());
  }
}
BENCHMARK(BM_StepAdditive);

static void BM_StepMultiplicative(benchmark::State& state) {
  const auto config = base_config("multiplicative_linear");
  const Model model = build_model(config);
  auto lat = model_lattice_ptr(model);
  const double k = 1.0 / 64;
  const auto R = discrete_propagator(SchemeSpec::crank_nicolson(), *lat, k);
  const WienerPath path = sample_path(1, model_covariance(model), lat, 64, 1.0);
  const IncrementGrid grid = coarsen(path, 1);
  SpectralState u = model_initial_state(model);
  int j = 0;
  for (auto _ : state) {
    u = step(model, R, u, j * k, k, grid.step(j % 64));
    j = (j + 1) % 64;
    benchmark::DoNotOptimize(u.c.data());
  }
}
BENCHMARK(BM_StepMultiplicative);

BENCHMARK_MAIN();
