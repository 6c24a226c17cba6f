#pragma once

#include <cstdint>
#include <random>

namespace homckn {

/// Seeded generator whose double stream is identical on every platform:
/// mt19937_64 is fully specified, and the mapping to [0,1) is done here
/// rather than by std::uniform_real_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform in log scale on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  int integer(int lo, int hi) { return lo + static_cast<int>(unit() * (hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace homckn
