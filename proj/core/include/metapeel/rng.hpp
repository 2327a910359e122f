#pragma once

#include <cstdint>
#include <random>

namespace metapeel {

/// Seeded generator with explicit value mappings so streams are identical
/// across standard libraries (std distributions are not portable).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    auto v = static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
    return v >= n ? n - 1 : v;
  }

private:
  std::mt19937_64 gen_;
};

} // namespace metapeel
