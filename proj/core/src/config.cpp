#include "spdelab/config.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spdelab/lattice.hpp"
#include "spdelab/state.hpp"

namespace spdelab {

using json = nlohmann::ordered_json;

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string s = "configuration invalid:";
  for (const auto& m : issues) {
    s += "\n  - ";
    s += m;
  }
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

namespace {

// Collects problems with JSON paths so a bad file reports everything at once.
struct Reader {
  std::vector<std::string> issues;

  void fail(const std::string& path, const std::string& msg) { issues.push_back(path + ": " + msg); }

  void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& item : j.items())
      if (!allowed.count(item.key())) fail(path + "." + item.key(), "unknown key");
  }

  template <typename T>
  void get(const json& j, const std::string& path, const char* key, T& out) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    try {
      out = v.get<T>();
    } catch (const json::exception&) {
      fail(path + "." + key, "wrong type (got " + std::string(v.type_name()) + ")");
    }
  }

  void get_field(const json& j, const std::string& path, const char* key, ExperimentConfig::Field& out) {
    if (!j.contains(key)) return;
    const json& v = j.at(key);
    std::string p = path + "." + key;
    if (!v.is_object()) {
      fail(p, "expected object");
      return;
    }
    check_keys(v, p, {"kind", "mode", "re", "im", "exponent"});
    get(v, p, "kind", out.kind);
    get(v, p, "mode", out.mode);
    get(v, p, "re", out.re);
    get(v, p, "im", out.im);
    get(v, p, "exponent", out.exponent);
  }
};

}  // namespace

std::vector<double> effective_k(const ExperimentConfig& c) {
  if (!c.k.empty()) return c.k;
  std::vector<double> ks;
  for (int j = 5; j <= 9; ++j) ks.push_back(c.T * std::ldexp(1.0, -j));
  return ks;
}

double effective_k_ref(const ExperimentConfig& c) {
  return c.k_ref > 0 ? c.k_ref : c.T * std::ldexp(1.0, -12);
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("JSON syntax: ") + e.what()});
  }
  if (!j.is_object()) throw ConfigError({"$: top level must be an object"});

  Reader r;
  ExperimentConfig c;
  r.check_keys(j, "$",
               {"T", "p", "sigma", "samples", "seed", "threads", "k", "k_ref", "full_interval",
                "dump_paths", "out", "schemes", "custom_schemes", "model"});
  r.get(j, "$", "T", c.T);
  r.get(j, "$", "p", c.p);
  r.get(j, "$", "sigma", c.sigma);
  r.get(j, "$", "samples", c.samples);
  r.get(j, "$", "seed", c.seed);
  r.get(j, "$", "threads", c.threads);
  r.get(j, "$", "k", c.k);
  r.get(j, "$", "k_ref", c.k_ref);
  r.get(j, "$", "full_interval", c.full_interval);
  r.get(j, "$", "dump_paths", c.dump_paths);
  r.get(j, "$", "out", c.out);
  r.get(j, "$", "schemes", c.schemes);

  if (j.contains("custom_schemes")) {
    const json& arr = j.at("custom_schemes");
    if (!arr.is_array()) {
      r.fail("$.custom_schemes", "expected array");
    } else {
      for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string p = "$.custom_schemes[" + std::to_string(i) + "]";
        const json& e = arr[i];
        if (!e.is_object()) {
          r.fail(p, "expected object");
          continue;
        }
        r.check_keys(e, p, {"name", "num", "den"});
        ExperimentConfig::CustomScheme cs;
        r.get(e, p, "name", cs.name);
        r.get(e, p, "num", cs.num);
        r.get(e, p, "den", cs.den);
        c.custom_schemes.push_back(std::move(cs));
      }
    }
  }

  if (j.contains("model")) {
    const json& m = j.at("model");
    if (!m.is_object()) {
      r.fail("$.model", "expected object");
    } else {
      r.check_keys(m, "$.model",
                   {"kind", "basis", "M", "noise_mode", "preset", "covariance", "u0", "v0",
                    "potential", "phi", "phi_param", "psi", "psi_param"});
      r.get(m, "$.model", "kind", c.model.kind);
      r.get(m, "$.model", "basis", c.model.basis);
      r.get(m, "$.model", "M", c.model.M);
      r.get(m, "$.model", "noise_mode", c.model.noise_mode);
      r.get(m, "$.model", "preset", c.model.preset);
      r.get(m, "$.model", "phi", c.model.phi);
      r.get(m, "$.model", "phi_param", c.model.phi_param);
      r.get(m, "$.model", "psi", c.model.psi);
      r.get(m, "$.model", "psi_param", c.model.psi_param);
      if (m.contains("covariance")) {
        const json& cov = m.at("covariance");
        if (!cov.is_object()) {
          r.fail("$.model.covariance", "expected object");
        } else {
          r.check_keys(cov, "$.model.covariance", {"kind", "beta", "values"});
          r.get(cov, "$.model.covariance", "kind", c.model.covariance.kind);
          r.get(cov, "$.model.covariance", "beta", c.model.covariance.beta);
          r.get(cov, "$.model.covariance", "values", c.model.covariance.values);
        }
      }
      r.get_field(m, "$.model", "u0", c.model.u0);
      r.get_field(m, "$.model", "v0", c.model.v0);
      r.get_field(m, "$.model", "potential", c.model.potential);
    }
  }

  if (!r.issues.empty()) throw ConfigError(std::move(r.issues));
  if (auto issues = validate_config(c); !issues.empty()) throw ConfigError(std::move(issues));
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError({"cannot open config file: " + file.string()});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

json field_to_json(const ExperimentConfig::Field& f) {
  return json{{"kind", f.kind}, {"mode", f.mode}, {"re", f.re}, {"im", f.im}, {"exponent", f.exponent}};
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["T"] = c.T;
  j["p"] = c.p;
  j["sigma"] = c.sigma;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["k"] = c.k;
  j["k_ref"] = c.k_ref;
  j["full_interval"] = c.full_interval;
  j["dump_paths"] = c.dump_paths;
  j["out"] = c.out;
  j["schemes"] = c.schemes;
  j["custom_schemes"] = json::array();
  for (const auto& cs : c.custom_schemes)
    j["custom_schemes"].push_back(json{{"name", cs.name}, {"num", cs.num}, {"den", cs.den}});
  json m;
  m["kind"] = c.model.kind;
  m["basis"] = c.model.basis;
  m["M"] = c.model.M;
  m["noise_mode"] = c.model.noise_mode;
  m["preset"] = c.model.preset;
  m["covariance"] =
      json{{"kind", c.model.covariance.kind}, {"beta", c.model.covariance.beta}, {"values", c.model.covariance.values}};
  m["u0"] = field_to_json(c.model.u0);
  m["v0"] = field_to_json(c.model.v0);
  m["potential"] = field_to_json(c.model.potential);
  m["phi"] = c.model.phi;
  m["phi_param"] = c.model.phi_param;
  m["psi"] = c.model.psi;
  m["psi_param"] = c.model.psi_param;
  j["model"] = std::move(m);
  return j.dump(2) + "\n";
}

namespace {

bool known_map(const std::string& name) {
  return name == "zero" || name == "one" || name == "identity" || name == "sin" ||
         name == "clipped_linear";
}

bool known_field(const std::string& kind) {
  return kind == "zero" || kind == "single_mode" || kind == "inverse_power" || kind == "algebraic";
}

bool integer_ratio(double a, double b, long& out) {
  double q = a / b;
  long n = std::lround(q);
  if (n < 1 || std::abs(q - static_cast<double>(n)) > 1e-9 * std::max(1.0, q)) return false;
  out = n;
  return true;
}

}  // namespace

std::vector<std::string> validate_config(const ExperimentConfig& c) {
  std::vector<std::string> issues;
  auto fail = [&](const std::string& m) { issues.push_back(m); };

  if (!(c.T > 0)) fail("$.T: must be positive");
  if (!(c.p >= 1)) fail("$.p: must be >= 1");
  if (c.samples < 1) fail("$.samples: must be >= 1");
  if (c.threads < 0) fail("$.threads: must be >= 0 (0 = all cores)");
  if (c.out.empty()) fail("$.out: must not be empty");

  if (c.schemes.empty()) fail("$.schemes: at least one scheme required");
  std::set<std::string> custom_names;
  for (std::size_t i = 0; i < c.custom_schemes.size(); ++i) {
    const auto& cs = c.custom_schemes[i];
    std::string p = "$.custom_schemes[" + std::to_string(i) + "]";
    if (cs.name.empty()) fail(p + ".name: must not be empty");
    if (!custom_names.insert(cs.name).second) fail(p + ".name: duplicate name '" + cs.name + "'");
    try {
      (void)SchemeSpec::rational(cs.num, cs.den, cs.name);
    } catch (const std::exception& e) {
      fail(p + ": " + e.what());
    }
  }
  for (const auto& name : c.schemes) {
    if (name == "exponential_euler" || name == "implicit_euler" || name == "crank_nicolson") continue;
    if (custom_names.count(name)) continue;
    fail("$.schemes: unknown scheme '" + name + "' (not built-in, not in custom_schemes)");
  }

  double kref = effective_k_ref(c);
  if (!(kref > 0)) fail("$.k_ref: must be positive");
  long n_fine = 0;
  if (kref > 0 && !integer_ratio(c.T, kref, n_fine))
    fail("$.k_ref: T / k_ref must be an integer");
  else if (kref > 0 && !std::has_single_bit(static_cast<unsigned long>(n_fine)))
    fail("$.k_ref: T / k_ref must be a power of two");
  auto ks = effective_k(c);
  if (ks.empty()) fail("$.k: at least one step size required");
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::string p = "$.k[" + std::to_string(i) + "]";
    if (!(ks[i] > 0)) {
      fail(p + ": must be positive");
      continue;
    }
    if (i > 0 && !(ks[i] < ks[i - 1])) fail(p + ": step sizes must be strictly decreasing");
    long m = 0;
    if (!integer_ratio(c.T, ks[i], m)) fail(p + ": T / k must be an integer");
    if (kref > 0) {
      long f = 0;
      if (!integer_ratio(ks[i], kref, f))
        fail(p + ": must be an integer multiple of k_ref");
      else if (!std::has_single_bit(static_cast<unsigned long>(f)))
        fail(p + ": k / k_ref must be a power of two");
    }
  }

  const auto& m = c.model;
  bool is_wave = m.kind == "wave";
  if (m.kind != "schrodinger" && m.kind != "wave") fail("$.model.kind: must be 'schrodinger' or 'wave'");
  if (m.basis != "torus" && m.basis != "dirichlet") fail("$.model.basis: must be 'torus' or 'dirichlet'");
  if (!is_wave && m.basis != "torus") fail("$.model.basis: schrodinger model requires the torus basis");
  if (m.M < 2) fail("$.model.M: must be >= 2");
  if (m.basis == "torus" && m.M >= 2 && !std::has_single_bit(static_cast<unsigned>(m.M)))
    fail("$.model.M: torus basis requires a power of two");

  const auto& cov = m.covariance;
  if (cov.kind == "power_law" || cov.kind == "polynomial_eigenlist") {
    if (!(cov.beta > 0)) fail("$.model.covariance.beta: must be positive");
  } else if (cov.kind == "eigenlist") {
    if (cov.values.empty()) fail("$.model.covariance.values: eigenlist must not be empty");
    for (std::size_t i = 0; i < cov.values.size(); ++i)
      if (!(cov.values[i] >= 0))
        fail("$.model.covariance.values[" + std::to_string(i) + "]: must be >= 0");
    if (static_cast<int>(cov.values.size()) != m.M)
      fail("$.model.covariance.values: size must equal M");
  } else if (cov.kind != "identity") {
    fail("$.model.covariance.kind: must be power_law, identity, eigenlist or polynomial_eigenlist");
  }

  for (const auto* f : {&m.u0, &m.v0, &m.potential}) {
    std::string name = f == &m.u0 ? "u0" : (f == &m.v0 ? "v0" : "potential");
    std::string p = "$.model." + name;
    if (!known_field(f->kind)) {
      fail(p + ".kind: unknown field kind '" + f->kind + "'");
      continue;
    }
    if ((f->kind == "inverse_power" || f->kind == "algebraic") && !(f->exponent > 0))
      fail(p + ".exponent: must be positive");
  }

  if (!known_map(m.phi)) fail("$.model.phi: unknown map '" + m.phi + "'");
  if (!known_map(m.psi)) fail("$.model.psi: unknown map '" + m.psi + "'");
  if (m.phi == "clipped_linear" && !(m.phi_param > 0)) fail("$.model.phi_param: clip radius must be positive");
  if (m.psi == "clipped_linear" && !(m.psi_param > 0)) fail("$.model.psi_param: clip radius must be positive");

  if (!is_wave) {
    if (m.noise_mode != "additive" && m.noise_mode != "multiplicative_linear" &&
        m.noise_mode != "multiplicative_nonlinear")
      fail("$.model.noise_mode: must be additive, multiplicative_linear or multiplicative_nonlinear");
    if (m.noise_mode == "multiplicative_linear" && m.psi != "identity")
      fail("$.model.psi: multiplicative_linear noise requires psi = identity");
    if (m.potential.kind != "zero" && m.basis != "torus")
      fail("$.model.potential: only supported on the torus basis");
  } else {
    if (m.preset == "trace_class") {
      if (m.basis != "dirichlet") fail("$.model.basis: wave trace_class preset requires dirichlet");
      if (cov.kind != "polynomial_eigenlist")
        fail("$.model.covariance.kind: wave trace_class preset requires polynomial_eigenlist");
      if (cov.kind == "polynomial_eigenlist" && !(cov.beta > 1))
        fail("$.model.covariance.beta: wave trace_class preset requires beta > 1");
    } else if (m.preset == "white_noise") {
      if (m.basis != "dirichlet") fail("$.model.basis: wave white_noise preset requires dirichlet");
      if (cov.kind != "identity")
        fail("$.model.covariance.kind: wave white_noise preset requires identity");
    } else if (m.preset == "smooth") {
      if (m.basis != "torus") fail("$.model.basis: wave smooth preset requires torus");
      if (cov.kind != "polynomial_eigenlist")
        fail("$.model.covariance.kind: wave smooth preset requires polynomial_eigenlist");
    } else {
      fail("$.model.preset: must be trace_class, white_noise or smooth");
    }
  }

  return issues;
}

std::vector<SchemeSpec> build_schemes(const ExperimentConfig& c) {
  std::vector<SchemeSpec> out;
  for (const auto& name : c.schemes) {
    if (name == "exponential_euler") {
      out.push_back(SchemeSpec::exponential_euler());
    } else if (name == "implicit_euler") {
      out.push_back(SchemeSpec::implicit_euler());
    } else if (name == "crank_nicolson") {
      out.push_back(SchemeSpec::crank_nicolson());
    } else {
      bool found = false;
      for (const auto& cs : c.custom_schemes)
        if (cs.name == name) {
          out.push_back(SchemeSpec::rational(cs.num, cs.den, cs.name));
          found = true;
          break;
        }
      if (!found) throw std::invalid_argument("build_schemes: unknown scheme " + name);
    }
  }
  return out;
}

namespace {

SpectralState build_field(const std::shared_ptr<const FrequencyLattice>& lat,
                          const ExperimentConfig::Field& f, int component, int components) {
  SpectralState s = zero_state(lat, components);
  if (f.kind == "zero") return s;
  if (f.kind == "single_mode") return single_mode_state(lat, f.mode, {f.re, f.im}, component, components);
  for (int i = 0; i < static_cast<int>(lat->size()); ++i) {
    double a = std::abs(static_cast<double>(lat->modes[i]));
    double v = f.kind == "inverse_power" ? 1.0 / (1.0 + std::pow(a, f.exponent))
                                         : std::pow(std::max(1.0, a), -f.exponent);
    s.at(component, i) = v;
  }
  return s;
}

LipschitzMap build_map(const std::string& name, double param) {
  if (name == "zero") return LipschitzMap::zero();
  if (name == "one") return LipschitzMap::one();
  if (name == "identity") return LipschitzMap::identity();
  if (name == "sin") return LipschitzMap::sin_scaled(param);
  return LipschitzMap::clipped_linear(param);
}

CovarianceSpec build_covariance(const ExperimentConfig::Covariance& cov,
                                const std::shared_ptr<const FrequencyLattice>& lat) {
  if (cov.kind == "power_law") return CovarianceSpec::power_law(cov.beta);
  if (cov.kind == "identity") return CovarianceSpec::identity();
  if (cov.kind == "eigenlist") return CovarianceSpec::eigenlist(cov.values);
  return CovarianceSpec::polynomial_decay(cov.beta, *lat);
}

}  // namespace

Model build_model(const ExperimentConfig& c) {
  if (auto issues = validate_config(c); !issues.empty()) throw ConfigError(std::move(issues));
  const auto& m = c.model;
  if (m.kind == "schrodinger") {
    auto lat = make_lattice(BasisKind::TorusComplex, GeneratorKind::Schrodinger, m.M);
    NoiseMode mode = m.noise_mode == "additive"
                         ? NoiseMode::Additive
                         : (m.noise_mode == "multiplicative_linear" ? NoiseMode::MultiplicativeLinear
                                                                    : NoiseMode::MultiplicativeNonlinear);
    std::optional<SpectralState> pot;
    if (m.potential.kind != "zero") pot = build_field(lat, m.potential, 0, 1);
    return make_schrodinger(lat, mode, build_covariance(m.covariance, lat),
                            build_map(m.phi, m.phi_param), build_map(m.psi, m.psi_param),
                            std::move(pot), build_field(lat, m.u0, 0, 1));
  }
  auto basis = m.basis == "torus" ? BasisKind::TorusComplex : BasisKind::DirichletSine;
  auto lat = make_lattice(basis, GeneratorKind::Wave, m.M);
  WaveModel::Preset preset = m.preset == "trace_class"
                                 ? WaveModel::Preset::TraceClass
                                 : (m.preset == "white_noise" ? WaveModel::Preset::WhiteNoise
                                                              : WaveModel::Preset::Smooth);
  SpectralState u0 = build_field(lat, m.u0, 0, 2);
  SpectralState v0 = build_field(lat, m.v0, 1, 2);
  for (int i = 0; i < static_cast<int>(lat->size()); ++i) u0.at(1, i) = v0.at(1, i);
  return make_wave(lat, preset, m.covariance.beta, build_map(m.phi, m.phi_param),
                   build_map(m.psi, m.psi_param), std::move(u0));
}

}  // namespace spdelab
