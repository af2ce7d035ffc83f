#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace lspc {

/// Deterministic random stream. All distributions are implemented by explicit
/// inverse-CDF transforms of the raw mt19937_64 output, so a given seed yields
/// bit-identical draws on every platform and run (the std::* distribution
/// objects are implementation-defined and are deliberately not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); zero is rejected so log() stays finite.
  double uniform01_pos() {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Rayleigh amplitude with the given scale parameter; mean = scale*sqrt(pi/2).
  double rayleigh(double scale) {
    return scale * std::sqrt(-2.0 * std::log(uniform01_pos()));
  }

  double exponential(double mean) { return -mean * std::log(uniform01_pos()); }

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent substream seed from (master, path). Trial-level
/// streams use path = {k, trial} so results do not depend on execution order.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint32_t> path) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(master),
                                   static_cast<std::uint32_t>(master >> 32)};
  words.insert(words.end(), path.begin(), path.end());
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace lspc
