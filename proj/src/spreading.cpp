#include "lspc/spreading.hpp"

#include <cmath>

#include "lspc/errors.hpp"

namespace lspc {

void SpreadingMatrix::validate() const {
  const double a = 1.0 / std::sqrt(static_cast<double>(n()));
  for (int j = 0; j < k(); ++j) {
    for (int i = 0; i < n(); ++i) {
      const double v = codes(i, j);
      if (v != a && v != -a)
        throw ConfigError("spreading code entry is not +-1/sqrt(n)");
    }
    if (std::abs(codes.col(j).norm() - 1.0) > 1e-12)
      throw ConfigError("spreading code column is not unit-norm");
  }
}

SpreadingMatrix sample_spreading_codes(int n, int k, Rng& rng) {
  if (n < 1 || k < 1) throw ConfigError("spreading codes need n >= 1 and k >= 1");
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  SpreadingMatrix s;
  s.codes.resize(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) s.codes(i, j) = (rng.bits() & 1u) ? a : -a;
  return s;
}

SpreadingMatrix sample_spreading_codes(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_spreading_codes(n, k, rng);
}

}  // namespace lspc
