#pragma once

#include <cstdint>
#include <random>

namespace pilot {

/// Deterministic per-member random streams derived from (seed, stream index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Standard normal via Box-Muller; portable across standard libraries.
  double normal() noexcept;

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace pilot
