#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lspc/channel.hpp"
#include "lspc/config.hpp"
#include "lspc/spreading.hpp"

namespace lspc::power_control {

/// Per-user transmit powers with the implied received powers and saturation flags.
struct PowerAllocation {
  Eigen::VectorXd tx;        // p_k in [0, P_max]
  Eigen::VectorXd received;  // P_k = p_k h_k^2
  std::vector<char> saturated;  // p_k == P_max

  int size() const { return static_cast<int>(tx.size()); }
  int saturated_count() const;
  double total_tx() const { return tx.sum(); }

  /// Builds from transmit powers: received = p h^2, flags set where p == p_max.
  static PowerAllocation from_tx(const Eigen::VectorXd& tx,
                                 const UserChannelSet& gains, double p_max);
};

struct SaturationEstimate {
  int u2 = 0;  ///< predicted count of users at maximum power
  int u1 = 0;  ///< K - u2
};

/// Equal-received-power rule: P_R = gbar sigma^2 / (1 - alpha gbar/(1+gbar)),
/// p_k = min(P_R / h_k^2, P_max). Throws FeasibilityError when the load bound
/// alpha < 1 + 1/gbar is violated.
PowerAllocation equal_received_power_allocation(const SystemConfig& cfg,
                                                const UserChannelSet& gains);

/// Predicts how many users end up at maximum power: counts quantile-table
/// entries whose required equal-received transmit power strictly exceeds P_max.
SaturationEstimate estimate_saturated_users(const SystemConfig& cfg,
                                            const GainQuantileTable& table);

/// Solves the large-system receive-power equation for the common target: u1
/// unsaturated users approximated at P/(1+gbar) weight, the u2 weakest table
/// users fixed at received power P_max q_i. Bisection with geometric upper
/// bracket expansion; relative residual tolerance 1e-12. Throws
/// FeasibilityError when the equation's supremum stays below the target.
double solve_received_power_linear(const SystemConfig& cfg, const GainQuantileTable& table,
                                   const SaturationEstimate& sat);

/// Distributed power rule for linear MMSE reception: u2 estimate, one global
/// receive-power solve, per-user clip p_k = min(P*/h_k^2, P_max). Each user's
/// output depends only on cfg, the table and its own gain.
PowerAllocation proposed_linear_allocation(const SystemConfig& cfg,
                                           const UserChannelSet& gains,
                                           const GainQuantileTable& table);

/// Mode selector for the SIC backward recursion.
struct SicMode {
  enum Kind { kCentralized, kDistributed } kind = kCentralized;
  int user = -1;  // the user computing its own power in distributed mode

  static SicMode centralized() { return {kCentralized, -1}; }
  static SicMode distributed(int j) { return {kDistributed, j}; }
};

/// Backward recursion k = K..1 for SIC/MMSE reception. Base: P_K = gbar
/// sigma^2. Step: P_k = gbar sigma^2 / (1 - (gbar/N) sum_{l>k} g_l p_l /
/// (P_{k+1} + g_l p_l gbar)) with g_l the squared gains in use, followed by
/// the clip p_k = min(P_k/g_k, P_max); once a user clips, later steps see its
/// actual (clipped) received power. Centralized mode uses true gains
/// everywhere. Distributed(j) runs the lookahead k = K..j+1 entirely on the
/// quantile table (entries below j are left at zero; user j knows nothing
/// about the stronger users it does not need) and applies the true h_j only
/// at k = j. Throws FeasibilityError if a step denominator is <= 0.
PowerAllocation proposed_sic_allocation(const SystemConfig& cfg, const UserChannelSet& gains,
                                        const GainQuantileTable& table, SicMode mode);

/// Assembles the fully distributed SIC profile: entry j of the result is the
/// power user j computes for itself via proposed_sic_allocation(distributed(j)).
PowerAllocation proposed_sic_distributed_profile(const SystemConfig& cfg,
                                                 const UserChannelSet& gains,
                                                 const GainQuantileTable& table);

enum class ReceiverKind { kLinear, kSic };

/// Conventional target-SINR interference-function iteration:
///   p_k <- min(P_max, p_k * gbar / gamma_k(p))
/// with gamma_k the exact SINR of the selected receiver, starting from
/// P_max/100, until every unsaturated user satisfies |gamma_k - gbar|/gbar <
/// 1e-6 (at most 500 iterations). Throws ConvergenceError with the residual
/// profile if the cap is reached.
PowerAllocation conventional_iterative_allocation(const SystemConfig& cfg,
                                                  const SpreadingMatrix& codes,
                                                  const UserChannelSet& gains,
                                                  ReceiverKind receiver,
                                                  int* iterations_out = nullptr);

}  // namespace lspc::power_control
