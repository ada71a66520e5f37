#pragma once

#include <cstdint>

namespace ucvrp {

// Portable seeded generator (splitmix64). Used instead of the standard
// distributions so generated instances are identical across toolchains.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

private:
  std::uint64_t state_;
};

// Stateless mix of two 64-bit words; keyed draws that do not depend on
// call order.
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a ^ (b * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
  g.next();
  return g.next();
}

inline double keyed_uniform(std::uint64_t seed, std::uint64_t key) {
  return static_cast<double>(mix64(seed, key) >> 11) * 0x1.0p-53;
}

} // namespace ucvrp
