#pragma once

#include <algorithm>
#include <functional>

#include <Eigen/Dense>

#include "lspc/channel.hpp"
#include "lspc/config.hpp"
#include "lspc/receivers.hpp"
#include "lspc/rng.hpp"
#include "lspc/spreading.hpp"

namespace lspc::test {

// The headline evaluation scenario: N=128, K=64, sigma^2=2e-9 W/Hz,
// P_max=-25 dBW, distances 10..1000 m, packet length 120.
inline SystemConfig nominal_config(int k = 64) {
  SystemConfig cfg;
  cfg.n = 128;
  cfg.k = k;
  cfg.noise_psd = 2e-9;
  cfg.target_sinr = 6.689;
  cfg.p_max = dbw_to_watt(-25.0);
  cfg.packet_len = 120;
  cfg.d_min = 10.0;
  cfg.d_max = 1000.0;
  cfg.seed = 1;
  return cfg;
}

// k orthonormal canonical codes (requires k <= n).
inline Eigen::MatrixXd orthogonal_codes(int n, int k) {
  return Eigen::MatrixXd::Identity(n, k);
}

// Gain set sorted non-increasingly, uniform draws in [lo, hi].
inline UserChannelSet random_gains(int k, std::uint64_t seed, double lo = 0.5, double hi = 2.0) {
  Rng rng(seed);
  UserChannelSet ch;
  ch.gain.resize(k);
  ch.distance = Eigen::VectorXd::Constant(k, 100.0);
  for (int i = 0; i < k; ++i) ch.gain[i] = rng.uniform(lo, hi);
  std::sort(ch.gain.data(), ch.gain.data() + k, std::greater<double>());
  ch.original_index.resize(k);
  for (int i = 0; i < k; ++i) ch.original_index[i] = i;
  return ch;
}

// Random well-conditioned receiver instance (O(1) powers and noise).
inline receivers::ReceiverInput random_instance(int n, int k, std::uint64_t seed,
                                                double noise = 0.5) {
  Rng rng(seed);
  receivers::ReceiverInput in;
  in.codes = sample_spreading_codes(n, k, rng).codes;
  in.gains.resize(k);
  in.tx_powers.resize(k);
  for (int i = 0; i < k; ++i) in.gains[i] = rng.uniform(0.5, 2.0);
  std::sort(in.gains.data(), in.gains.data() + k, std::greater<double>());
  for (int i = 0; i < k; ++i) in.tx_powers[i] = rng.uniform(0.5, 2.0);
  in.noise_psd = noise;
  return in;
}

}  // namespace lspc::test
