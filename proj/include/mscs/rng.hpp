#pragma once

#include <cstdint>
#include <random>

namespace mscs {

/// Seeded stream used by every sampling routine: std::mt19937_64 (whose
/// output sequence is fixed by the C++ standard) with uniforms built from
/// the top 53 bits, so results are identical across platforms and standard
/// libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() {
    return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mscs
