#ifndef CHUNKGA_RNG_H_
#define CHUNKGA_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace chunkga {

// Seeded mt19937_64 with distributions derived by hand from the raw 64-bit
// stream, so a seed replays identically on every standard library.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform in [0, n), n > 0. Rejection keeps it unbiased.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return static_cast<std::size_t>(r % bound);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace chunkga

#endif  // CHUNKGA_RNG_H_
