#pragma once

#include <cstdint>
#include <random>

namespace rcascade {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to hash states and to
// derive independent trial streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  // Stream key: splitmix64(splitmix64(seed) ^ trial).
  std::uint64_t stream() const { return splitmix64(splitmix64(seed) ^ trial); }

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

// mt19937_64 with the stream key as its seed. The engine is fully specified by
// the standard; the distributions below are written out by hand because the
// std:: distributions are implementation-defined.
class Rng {
public:
  explicit Rng(RngSeed seed) : engine_(seed.stream()) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0,1) with 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

private:
  std::mt19937_64 engine_;
};

}  // namespace rcascade
