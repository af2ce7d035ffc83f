#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lspc/config.hpp"
#include "lspc/rng.hpp"

namespace lspc {

/// Per-user distances and fading amplitudes, sorted non-increasingly by gain.
/// Index 0 is the strongest user (first in the SIC detection order).
struct UserChannelSet {
  Eigen::VectorXd distance;        ///< d_k [m], in sorted-user order
  Eigen::VectorXd gain;            ///< amplitude h_k > 0, non-increasing
  std::vector<int> original_index; ///< original_index[s] = pre-sort index of sorted user s

  Eigen::VectorXd gain_sq() const { return gain.array().square(); }

  /// inverse permutation: sorted position of each original user
  std::vector<int> sorted_position() const;
};

/// Draws distances uniform on [d_min, d_max] and Rayleigh amplitudes whose
/// mean equals 1/d_k (scale 1/(d_k*sqrt(pi/2))), then sorts non-increasingly
/// by gain with ties broken by original index.
UserChannelSet sample_channels(const SystemConfig& cfg, std::uint64_t seed);
UserChannelSet sample_channels(const SystemConfig& cfg, Rng& rng);

/// Estimate of the inverse CDF of the squared-gain distribution on the grid
/// (K-l)/K, l = 1..K, built from Monte Carlo samples of the same composite
/// distribution used by sample_channels. value[l-1] is non-increasing in l;
/// the weakest entries are what a distributed user assumes for the users it
/// cannot observe.
struct GainQuantileTable {
  Eigen::VectorXd value;  ///< q_l, l = 1..K (0-based storage)
  long sample_count = 0;
  std::uint64_t seed = 0;
};

/// Quantile arguments are clamped to [1/(2*sample_count), 1 - 1/(2*sample_count)]
/// so the weakest entry never evaluates the distribution's infimum (zero).
/// Requires sample_count >= 10*cfg.k.
GainQuantileTable build_gain_quantile_table(const SystemConfig& cfg,
                                            long sample_count,
                                            std::uint64_t seed);

}  // namespace lspc
