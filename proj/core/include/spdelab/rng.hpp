#pragma once
//
// Deterministic stream derivation. Every Gaussian stream used anywhere in the
// library is keyed by an explicit tuple (base seed, sample index, mode
// position); the key is mixed down to a 64-bit engine seed with splitmix64.
// Streams are therefore independent of thread scheduling and of each other by
// construction, and repeated runs of the same binary on the same platform are
// bit-identical. (The normal deviates themselves come from the C++ standard
// library, so cross-platform bit equality is not promised -- same binary,
// same bytes, is the contract here.)

#include <cstdint>
#include <random>

namespace spdelab {

[[nodiscard]] inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Order matters: mix_keys(a, b) != mix_keys(b, a) in general.
[[nodiscard]] inline constexpr std::uint64_t mix_keys(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b + 0x9E3779B97F4A7C15ULL));
}

[[nodiscard]] inline constexpr std::uint64_t derive_sample_seed(std::uint64_t seed,
                                                                std::uint64_t sample) {
  return mix_keys(seed, mix_keys(0x53414D504C45ULL, sample));  // "SAMPLE"
}

[[nodiscard]] inline constexpr std::uint64_t derive_mode_seed(std::uint64_t sample_seed,
                                                              std::uint64_t mode_position) {
  return mix_keys(sample_seed, mix_keys(0x4D4F4445ULL, mode_position));  // "MODE"
}

class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : eng_(seed) {}
  [[nodiscard]] double operator()() { return dist_(eng_); }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace spdelab
