#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "dkit/types.hpp"

namespace dkit {

/// Seedable generator used for every random construction in the library.
///
/// The bit stream is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. Uniform and Gaussian variates are derived here (53-bit
/// mantissa fill, Box-Muller) instead of through <random> distributions, whose
/// algorithms are implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/box-muller";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();

  /// Uniform integer on [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);

  double normal();

  /// Circular complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Mixes a master seed and a stream index into an independent 64-bit seed
/// (two rounds of splitmix64). Used for per-trial seeding.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace dkit
