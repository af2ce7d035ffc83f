#pragma once

#include <Eigen/Dense>

namespace lspc::receivers {

/// One finite-system instance: any unit-norm code columns are accepted (tests
/// use canonical/orthogonal codes, simulations use SpreadingMatrix::codes).
/// For the SIC operations users must already be in detection order, i.e.
/// sorted non-increasingly by gain.
struct ReceiverInput {
  Eigen::MatrixXd codes;      // N x K
  Eigen::VectorXd gains;      // h_k, length K
  Eigen::VectorXd tx_powers;  // p_k, length K
  double noise_psd = 0.0;     // sigma^2

  int n() const { return static_cast<int>(codes.rows()); }
  int k() const { return static_cast<int>(codes.cols()); }
  Eigen::VectorXd received() const {
    return tx_powers.array() * gains.array().square();
  }
  void check() const;  // dimension consistency, throws std::invalid_argument
};

struct SinrReport {
  Eigen::VectorXd sinr;         // linear scale, >= 0, finite
  Eigen::VectorXd filter_norm;  // ||d_k||
};

/// Exact linear MMSE receive filter for one user,
///   d_k = sqrt(p_k) h_k (S H P H^T S^T + sigma^2 I)^{-1} s_k,
/// computed via a positive-definite solve (no explicit inverse).
Eigen::VectorXd mmse_filter(const ReceiverInput& in, int user);

/// Output SINR of an arbitrary linear filter for `user`:
///   p_k h_k^2 (d^T s_k)^2 / (sigma^2 ||d||^2 + sum_{i != k} p_i h_i^2 (d^T s_i)^2).
double sinr_linear(const ReceiverInput& in, int user, const Eigen::VectorXd& filter);

/// Exact MMSE output SINRs for all users. One Cholesky factorization of the
/// full covariance is shared; per-user solves run in parallel (OpenMP).
SinrReport linear_sinrs(const ReceiverInput& in);

/// Exact SIC/MMSE output SINRs under perfect cancellation of users detected
/// earlier (lower index). Stage k sees only codes/powers of users j >= k:
///   d_k = sqrt(p_k) h_k (S_k H_k P_k H_k^T S_k^T + sigma^2 I)^{-1} s_k.
/// The stage covariances are maintained by backward rank-one Cholesky updates
/// (O(K N^2) total); agreement with the per-stage rebuild in `reference` is
/// required to 1e-9 and enforced by the tests.
SinrReport sic_sinrs(const ReceiverInput& in);

/// Serial reference implementations: straightforward per-user / per-stage
/// computation, no OpenMP, stage covariances rebuilt from scratch. Kept as
/// the ground truth the optimized kernels are tested and benchmarked against.
namespace reference {
SinrReport linear_sinrs(const ReceiverInput& in);
SinrReport sic_sinrs(const ReceiverInput& in);
}  // namespace reference

}  // namespace lspc::receivers
