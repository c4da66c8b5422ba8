#pragma once

#include <cstdint>
#include <random>

namespace greenberg {

/// Deterministic random source. mt19937_64 is pinned by the standard, and the
/// bounded draw below avoids std::uniform_int_distribution (whose output is
/// implementation-defined), so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Unbiased draw from [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace greenberg
