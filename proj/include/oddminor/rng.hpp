#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace oddminor {

/// splitmix64 finaliser; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for a named component of a run. Distinct names give unrelated
/// streams, so one sampled object never shifts another's draws.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) noexcept;
/// Child seed for the index-th trial of a plan.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Seeded random stream. Every derived quantity is computed here from raw
/// engine output rather than through std distributions, whose algorithms
/// differ between standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t seed, std::string_view name) : engine_(derive_seed(seed, name)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_zero() { return 1.0 - uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform on [0, bound), bound >= 1, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace oddminor
