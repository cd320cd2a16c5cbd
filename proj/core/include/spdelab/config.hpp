#pragma once
//
// Experiment configuration: a flat JSON document, parsed strictly (unknown
// keys are errors, every message carries the JSON path) and serialized
// canonically (every field, fixed order, round-trip identity).
//
// Field specs describe coefficient profiles:
//   zero          : all coefficients 0
//   single_mode   : amplitude re + i*im on one mode
//   inverse_power : c = 1 / (1 + |mode|^exponent)
//   algebraic     : c = max(1, |mode|)^{-exponent}
// Covariance specs mirror noise.hpp, plus "polynomial_eigenlist" which
// materializes q = max(1,|mode|)^{-beta}.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "spdelab/models.hpp"
#include "spdelab/schemes.hpp"

namespace spdelab {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  [[nodiscard]] const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct ExperimentConfig {
  double T = 1.0;
  double p = 2.0;
  double sigma = 0.0;
  int samples = 100;
  std::uint64_t seed = 20260825;
  int threads = 0;  // 0 = all available cores
  std::vector<double> k;
  double k_ref = 0.0;  // 0 = default T * 2^-12
  bool full_interval = true;
  bool dump_paths = false;
  std::string out = "results";
  std::vector<std::string> schemes = {"exponential_euler", "implicit_euler", "crank_nicolson"};

  struct CustomScheme {
    std::string name;
    std::vector<double> num, den;
  };
  std::vector<CustomScheme> custom_schemes;

  struct Field {
    std::string kind = "zero";  // zero | single_mode | inverse_power | algebraic
    int mode = 0;
    double re = 1.0;
    double im = 0.0;
    double exponent = 0.0;
  };

  struct Covariance {
    std::string kind = "power_law";  // power_law | identity | eigenlist | polynomial_eigenlist
    double beta = 5.1;
    std::vector<double> values;
  };

  struct ModelBlock {
    std::string kind = "schrodinger";  // schrodinger | wave
    std::string basis = "torus";       // torus | dirichlet (wave only; schrodinger is torus)
    int M = 1024;
    // schrodinger: additive | multiplicative_linear | multiplicative_nonlinear
    std::string noise_mode = "additive";
    // wave: trace_class | white_noise | smooth
    std::string preset = "trace_class";
    Covariance covariance;
    Field u0, v0, potential;  // v0: wave second component; potential: zero kind = none
    std::string phi = "zero";  // zero | identity | sin | clipped_linear
    double phi_param = 1.0;
    std::string psi = "identity";
    double psi_param = 1.0;
  } model;
};

// Effective values with defaults resolved (k list, k_ref).
[[nodiscard]] std::vector<double> effective_k(const ExperimentConfig& c);
[[nodiscard]] double effective_k_ref(const ExperimentConfig& c);

[[nodiscard]] ExperimentConfig parse_config(const std::string& json_text);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& file);
[[nodiscard]] std::string serialize_config(const ExperimentConfig& c);

// Semantic validation; empty result means valid. parse_config/load_config
// run this and throw ConfigError on any issue.
[[nodiscard]] std::vector<std::string> validate_config(const ExperimentConfig& c);

[[nodiscard]] std::vector<SchemeSpec> build_schemes(const ExperimentConfig& c);
[[nodiscard]] Model build_model(const ExperimentConfig& c);

}  // namespace spdelab
