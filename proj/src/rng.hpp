// Seeded draws with a portable transform layer.
//
// std::mt19937_64 produces a standard-specified sequence, but the standard
// distribution adapters are implementation-defined, which would break
// byte-identical fixtures across toolchains. The two transforms we need are
// small enough to pin down explicitly.
#ifndef SPATO_RNG_HPP_
#define SPATO_RNG_HPP_

#include <cstdint>
#include <random>

namespace spato {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [lo, hi). 53-bit mantissa scaling of one engine draw.
  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

  // Uniform integer in [lo, hi], inclusive. Rejection sampling keeps the
  // draw unbiased for any span.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return engine_();  // full 64-bit range
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return lo + draw % span;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spato

#endif  // SPATO_RNG_HPP_
