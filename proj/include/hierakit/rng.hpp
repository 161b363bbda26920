#ifndef HIERAKIT_RNG_HPP_
#define HIERAKIT_RNG_HPP_

#include <cstdint>

namespace hierakit {

// splitmix64: tiny, fully portable, bit-stable across platforms. All
// randomized paths draw from this so that a seed pins every output byte.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace hierakit

#endif  // HIERAKIT_RNG_HPP_
