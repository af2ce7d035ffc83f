#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "lspc/rng.hpp"

namespace lspc {

/// N x K matrix of binary spreading codes, entries +-1/sqrt(N), unit-norm columns.
struct SpreadingMatrix {
  Eigen::MatrixXd codes;  // N x K

  int n() const { return static_cast<int>(codes.rows()); }
  int k() const { return static_cast<int>(codes.cols()); }

  /// Throws ConfigError if the two-valued +-1/sqrt(N) structure is violated
  /// or any column norm deviates from 1 by more than 1e-12.
  void validate() const;
};

/// Entries i.i.d. equiprobable +-1/sqrt(n); deterministic given seed.
SpreadingMatrix sample_spreading_codes(int n, int k, std::uint64_t seed);
SpreadingMatrix sample_spreading_codes(int n, int k, Rng& rng);

}  // namespace lspc
