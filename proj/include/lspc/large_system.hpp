#pragma once

#include <Eigen/Dense>

namespace lspc::large_system {

/// Discrete distribution of interferer received powers.
struct PowerDistribution {
  Eigen::VectorXd support;  // received power atoms [W], >= 0
  Eigen::VectorXd mass;     // probabilities, nonnegative, sum to 1 within 1e-12

  void validate() const;  // throws std::invalid_argument
};

struct FixedPointResult {
  double sinr = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// Limiting MMSE SINR: the unique root of
///   gamma = p_k / (sigma^2 + alpha * E_P[ P p_k / (p_k + P gamma) ]).
/// Solved by monotone fixed-point iteration from gamma0 = p_k/sigma^2 with a
/// bisection safeguard on the guaranteed bracket [0, p_k/sigma^2]; residual
/// tolerance 1e-12 (absolute + relative). Throws NumericalError on the
/// (never observed) failure to converge within 1e4 iterations.
FixedPointResult tse_hanly_sinr(double own_power, const PowerDistribution& interferers,
                                double alpha, double noise_psd);

/// Finite-K deterministic approximation of the MMSE SINR:
///   gamma_k = P_k / (sigma^2 + (1/n) sum_{j != k} P_k P_j / (P_k + P_j gamma_k)).
/// Equivalent to tse_hanly_sinr with the empirical distribution of the other
/// K-1 powers and load (K-1)/n.
FixedPointResult finite_mmse_sinr_heuristic(int user, const Eigen::VectorXd& received_powers,
                                            int n, double noise_psd);

/// Limiting / finite-K SIC/MMSE SINR for detection stage `user`; interference
/// comes only from the weaker (higher-index) users:
///   gamma_k = P_k / (sigma^2 + (1/n) sum_{l > k} P_l P_k / (P_k + P_l gamma_k)).
/// `received_powers` must be sorted non-increasingly; ties in power are
/// resolved purely by index.
FixedPointResult sic_asymptotic_sinr(int user, const Eigen::VectorXd& received_powers,
                                     int n, double noise_psd);

}  // namespace lspc::large_system
