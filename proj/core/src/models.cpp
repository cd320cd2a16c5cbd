#include "spdelab/models.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spdelab/transform.hpp"

namespace spdelab {

LipschitzMap LipschitzMap::clipped_linear(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("clipped_linear: radius must be positive");
  return {Kind::ClippedLinear, radius};
}

double LipschitzMap::lip() const {
  switch (kind) {
    case Kind::Zero:
    case Kind::One:
      return 0.0;
    case Kind::Identity:
      return 1.0;
    case Kind::SinScaled:
      return std::abs(param);
    case Kind::ClippedLinear:
      return 1.0;
  }
  return 0.0;
}

cplx LipschitzMap::operator()(cplx z) const {
  switch (kind) {
    case Kind::Zero:
      return {0.0, 0.0};
    case Kind::One:
      return {1.0, 0.0};
    case Kind::Identity:
      return z;
    case Kind::SinScaled:
      return {param * std::sin(z.real()), param * std::sin(z.imag())};
    case Kind::ClippedLinear: {
      const double a = std::abs(z);
      return a <= param ? z : z * (param / a);
    }
  }
  return {0.0, 0.0};
}

SchrodingerModel make_schrodinger(std::shared_ptr<const FrequencyLattice> lattice,
                                  NoiseMode noise_mode, CovarianceSpec cov, LipschitzMap phi,
                                  LipschitzMap psi, std::optional<SpectralState> potential,
                                  SpectralState u0) {
  if (!lattice) throw std::invalid_argument("schrodinger: null lattice");
  if (lattice->basis != BasisKind::TorusComplex ||
      lattice->generator != GeneratorKind::Schrodinger) {
    throw std::invalid_argument("schrodinger: lattice must be (TorusComplex, Schrodinger)");
  }
  if (u0.lattice.get() != lattice.get() || u0.components != 1) {
    throw std::invalid_argument("schrodinger: u0 must be a single-component state on the lattice");
  }
  if (potential &&
      (potential->lattice.get() != lattice.get() || potential->components != 1)) {
    throw std::invalid_argument("schrodinger: potential must live on the lattice");
  }
  if (noise_mode == NoiseMode::MultiplicativeLinear && psi.kind != LipschitzMap::Kind::Identity) {
    throw std::invalid_argument("schrodinger: linear multiplicative noise requires psi = identity");
  }
  (void)cov.eigenvalues(*lattice);  // size/positivity check up front
  SchrodingerModel m;
  m.lattice = std::move(lattice);
  m.noise_mode = noise_mode;
  m.cov = std::move(cov);
  m.phi = phi;
  m.psi = psi;
  m.potential = std::move(potential);
  m.u0 = std::move(u0);
  return m;
}

WaveModel make_wave(std::shared_ptr<const FrequencyLattice> lattice, WaveModel::Preset preset,
                    double beta, LipschitzMap phi, LipschitzMap psi, SpectralState u0) {
  if (!lattice) throw std::invalid_argument("wave: null lattice");
  if (lattice->generator != GeneratorKind::Wave) {
    throw std::invalid_argument("wave: lattice must use the wave generator");
  }
  if (u0.lattice.get() != lattice.get() || u0.components != 2) {
    throw std::invalid_argument("wave: initial state must have two components on the lattice");
  }
  WaveModel m;
  m.lattice = lattice;
  m.preset = preset;
  m.phi = phi;
  m.psi = psi;
  m.u0 = std::move(u0);
  switch (preset) {
    case WaveModel::Preset::TraceClass:
      if (lattice->basis != BasisKind::DirichletSine) {
        throw std::invalid_argument("wave: TraceClass preset expects the Dirichlet basis");
      }
      if (!(beta > 1.0)) {
        throw std::invalid_argument(
            "wave: TraceClass needs q_j = j^-beta with beta > 1 (trace class in L2)");
      }
      m.cov = CovarianceSpec::polynomial_decay(beta, *lattice);
      m.delta = 1.0;
      break;
    case WaveModel::Preset::WhiteNoise:
      if (lattice->basis != BasisKind::DirichletSine) {
        throw std::invalid_argument("wave: WhiteNoise preset expects the Dirichlet basis");
      }
      m.cov = CovarianceSpec::identity();
      m.delta = 0.5;  // attainable smoothing is any delta < 1/2
      break;
    case WaveModel::Preset::Smooth:
      if (lattice->basis != BasisKind::TorusComplex) {
        throw std::invalid_argument("wave: Smooth preset expects the torus basis");
      }
      if (!(beta > 0.0)) throw std::invalid_argument("wave: Smooth needs beta > 0");
      m.cov = CovarianceSpec::polynomial_decay(beta, *lattice);
      m.delta = std::min(1.0 + beta / 2.0, 2.0);
      break;
  }
  return m;
}

const FrequencyLattice& model_lattice(const Model& m) {
  return *model_lattice_ptr(m);
}

const std::shared_ptr<const FrequencyLattice>& model_lattice_ptr(const Model& m) {
  return std::visit([](const auto& mm) -> const std::shared_ptr<const FrequencyLattice>& {
    return mm.lattice;
  }, m);
}

int model_components(const Model& m) {
  return std::holds_alternative<WaveModel>(m) ? 2 : 1;
}

const SpectralState& model_initial_state(const Model& m) {
  return std::visit([](const auto& mm) -> const SpectralState& { return mm.u0; }, m);
}

const CovarianceSpec& model_covariance(const Model& m) {
  return std::visit([](const auto& mm) -> const CovarianceSpec& { return mm.cov; }, m);
}

bool drift_is_zero(const Model& m) {
  if (const auto* s = std::get_if<SchrodingerModel>(&m)) {
    return s->phi.is_zero() && !s->potential.has_value();
  }
  return std::get<WaveModel>(m).phi.is_zero();
}

namespace {

// shared grid scratch for one evaluation; per thread via cached_transform
struct GridScratch {
  std::vector<cplx> gu, gw;
};

thread_local GridScratch scratch;

}  // namespace

void accumulate_drift(const Model& m, double /*t*/, const SpectralState& u, double k,
                      SpectralState& y) {
  if (drift_is_zero(m)) return;
  if (const auto* s = std::get_if<SchrodingerModel>(&m)) {
    const SpectralTransform& tr = cached_transform(s->lattice);
    const int M = s->lattice->M;
    scratch.gu.resize(M);
    scratch.gw.resize(M);
    tr.to_grid(u.component(0), scratch.gu);
    if (s->potential) {
      tr.to_grid(s->potential->component(0), scratch.gw);
      for (int i = 0; i < M; ++i) {
        scratch.gu[i] = scratch.gw[i] * scratch.gu[i] + s->phi(scratch.gu[i]);
      }
    } else {
      for (int i = 0; i < M; ++i) scratch.gu[i] = s->phi(scratch.gu[i]);
    }
    tr.to_coeffs(scratch.gu, scratch.gu);
    const cplx mik{0.0, -k};  // -i * k
    for (int i = 0; i < M; ++i) y.at(0, i) += mik * scratch.gu[i];
  } else {
    const auto& w = std::get<WaveModel>(m);
    const SpectralTransform& tr = cached_transform(w.lattice);
    const int M = w.lattice->M;
    scratch.gu.resize(M);
    tr.to_grid(u.component(0), scratch.gu);
    for (int i = 0; i < M; ++i) scratch.gu[i] = w.phi(scratch.gu[i]);
    tr.to_coeffs(scratch.gu, scratch.gu);
    for (int i = 0; i < M; ++i) y.at(1, i) += k * scratch.gu[i];
  }
}

void accumulate_diffusion(const Model& m, double /*t*/, const SpectralState& u,
                          std::span<const double> dW, SpectralState& y) {
  const FrequencyLattice& lat = model_lattice(m);
  const int M = lat.M;
  if (static_cast<int>(dW.size()) != M) {
    throw std::invalid_argument("diffusion: increment span size mismatch");
  }
  if (const auto* s = std::get_if<SchrodingerModel>(&m)) {
    // psi == 1 multiplies the noise field by one: the coefficients pass
    // through unchanged, so skip the transforms (same shortcut below for the
    // wave pair).
    if (s->noise_mode == NoiseMode::Additive || s->psi.kind == LipschitzMap::Kind::One) {
      const cplx mi{0.0, -1.0};
      for (int i = 0; i < M; ++i) y.at(0, i) += mi * dW[i];
      return;
    }
    const SpectralTransform& tr = cached_transform(s->lattice);
    scratch.gu.resize(M);
    scratch.gw.resize(M);
    tr.to_grid(u.component(0), scratch.gu);
    for (int i = 0; i < M; ++i) scratch.gw[i] = cplx{dW[i], 0.0};
    tr.to_grid(scratch.gw, scratch.gw);
    for (int i = 0; i < M; ++i) scratch.gu[i] = s->psi(scratch.gu[i]) * scratch.gw[i];
    tr.to_coeffs(scratch.gu, scratch.gu);
    const cplx mi{0.0, -1.0};
    for (int i = 0; i < M; ++i) y.at(0, i) += mi * scratch.gu[i];
  } else {
    const auto& w = std::get<WaveModel>(m);
    if (w.psi.kind == LipschitzMap::Kind::One) {
      for (int i = 0; i < M; ++i) y.at(1, i) += dW[i];
      return;
    }
    const SpectralTransform& tr = cached_transform(w.lattice);
    scratch.gu.resize(M);
    scratch.gw.resize(M);
    tr.to_grid(u.component(0), scratch.gu);
    for (int i = 0; i < M; ++i) scratch.gw[i] = cplx{dW[i], 0.0};
    tr.to_grid(scratch.gw, scratch.gw);
    for (int i = 0; i < M; ++i) scratch.gu[i] = w.psi(scratch.gu[i]) * scratch.gw[i];
    tr.to_coeffs(scratch.gu, scratch.gu);
    for (int i = 0; i < M; ++i) y.at(1, i) += scratch.gu[i];
  }
}

}  // namespace spdelab
