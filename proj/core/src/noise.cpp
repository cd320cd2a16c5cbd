#include "spdelab/noise.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "spdelab/rng.hpp"

namespace spdelab {

CovarianceSpec CovarianceSpec::power_law(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("covariance: power_law beta must be positive");
  CovarianceSpec c;
  c.kind = Kind::PowerLaw;
  c.beta = beta;
  return c;
}

CovarianceSpec CovarianceSpec::identity() {
  CovarianceSpec c;
  c.kind = Kind::Identity;
  return c;
}

CovarianceSpec CovarianceSpec::eigenlist(std::vector<double> values) {
  for (double v : values) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw std::invalid_argument("covariance: eigenlist entries must be finite and >= 0");
    }
  }
  CovarianceSpec c;
  c.kind = Kind::Eigenlist;
  c.values = std::move(values);
  return c;
}

CovarianceSpec CovarianceSpec::polynomial_decay(double exponent, const FrequencyLattice& lat) {
  if (!(exponent > 0.0)) {
    throw std::invalid_argument("covariance: polynomial_decay exponent must be positive");
  }
  std::vector<double> q(lat.M);
  for (int i = 0; i < lat.M; ++i) {
    const double j = std::max(1.0, std::abs(static_cast<double>(lat.modes[i])));
    q[i] = std::pow(j, -exponent);
  }
  return eigenlist(std::move(q));
}

std::vector<double> CovarianceSpec::eigenvalues(const FrequencyLattice& lat) const {
  std::vector<double> q(lat.M);
  switch (kind) {
    case Kind::PowerLaw:
      for (int i = 0; i < lat.M; ++i) {
        q[i] = 1.0 / (1.0 + std::pow(std::abs(static_cast<double>(lat.modes[i])), beta));
      }
      break;
    case Kind::Identity:
      for (int i = 0; i < lat.M; ++i) q[i] = 1.0;
      break;
    case Kind::Eigenlist:
      if (static_cast<int>(values.size()) != lat.M) {
        throw std::invalid_argument("covariance: eigenlist size != lattice size");
      }
      q = values;
      break;
  }
  return q;
}

WienerPath sample_path(std::uint64_t seed, const CovarianceSpec& cov,
                       std::shared_ptr<const FrequencyLattice> lattice, int n_fine, double T) {
  if (!lattice) throw std::invalid_argument("sample_path: null lattice");
  if (n_fine < 1 || !std::has_single_bit(static_cast<unsigned>(n_fine))) {
    throw std::invalid_argument("sample_path: n_fine must be a positive power of two");
  }
  if (!(T > 0.0)) throw std::invalid_argument("sample_path: T must be positive");

  const std::vector<double> q = cov.eigenvalues(*lattice);
  WienerPath path;
  path.lattice = std::move(lattice);
  path.T = T;
  path.n_fine = n_fine;
  path.incr.assign(static_cast<size_t>(path.lattice->M) * n_fine, 0.0);

  const double dt = T / n_fine;
  for (int idx = 0; idx < path.lattice->M; ++idx) {
    if (q[idx] == 0.0) continue;  // silent mode, no draws
    const double sd = std::sqrt(q[idx] * dt);
    NormalStream gen(derive_mode_seed(seed, static_cast<std::uint64_t>(idx)));
    double* row = path.incr.data() + static_cast<size_t>(idx) * n_fine;
    for (int i = 0; i < n_fine; ++i) row[i] = sd * gen();
  }
  return path;
}

IncrementGrid coarsen(const WienerPath& path, int factor) {
  if (factor < 1 || path.n_fine % factor != 0) {
    throw std::invalid_argument("coarsen: factor must divide n_fine");
  }
  IncrementGrid g;
  g.M = path.lattice->M;
  g.n_steps = path.n_fine / factor;
  g.d.assign(static_cast<size_t>(g.n_steps) * g.M, 0.0);
  for (int idx = 0; idx < g.M; ++idx) {
    const double* row = path.incr.data() + static_cast<size_t>(idx) * path.n_fine;
    for (int j = 0; j < g.n_steps; ++j) {
      double s = 0.0;
      for (int i = 0; i < factor; ++i) s += row[j * factor + i];
      g.d[static_cast<size_t>(j) * g.M + idx] = s;
    }
  }
  return g;
}

void dump_path(const WienerPath& path, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("dump_path: cannot open " + file.string());
  static_assert(std::endian::native == std::endian::little,
                "dump_path assumes a little-endian host");
  const std::uint32_t header[2] = {static_cast<std::uint32_t>(path.n_fine),
                                   static_cast<std::uint32_t>(path.lattice->M)};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  out.write(reinterpret_cast<const char*>(path.incr.data()),
            static_cast<std::streamsize>(path.incr.size() * sizeof(double)));
  if (!out) throw std::runtime_error("dump_path: write failed for " + file.string());
}

}  // namespace spdelab
