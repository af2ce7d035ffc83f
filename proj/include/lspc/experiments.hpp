#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lspc/config.hpp"

namespace lspc::experiments {

/// Target SINR maximizing packet-success-per-watt for packet length m:
/// the root of gamma * m * exp(-gamma) = 1 - exp(-gamma) on [1, 20],
/// tolerance 1e-8. m = 120 gives ~6.689 (8.25 dB).
double solve_target_sinr(int m);

/// Energy efficiency: scale * (1 - exp(-sinr))^m / power [bits/Joule up to
/// the configurable scale constant]. Throws std::domain_error for power <= 0.
double utility(double sinr, double power, int m, double scale = 1.0);

/// Algorithm / receiver tags used in CSV output.
inline constexpr const char* kAlgEqualReceived = "equal_received_power";
inline constexpr const char* kAlgProposed = "proposed";
inline constexpr const char* kAlgConventional = "conventional";
inline constexpr const char* kRecvLinear = "linear";
inline constexpr const char* kRecvSic = "sic";

struct Fig1Row {
  int user_index;       // 1-based
  int realization_id;   // 1-based
  double exact_sinr;
  double asymptotic_sinr;
};

struct Fig1Result {
  int n = 0, k = 0;
  std::vector<Fig1Row> rows;  // user-major, realizations ascending within user
};

/// Draws `realizations` instances of exponentially distributed received powers
/// (unit transmit power, gains sqrt(P), sorted) and random codes; for each
/// user emits the exact SIC/MMSE SINR and the deterministic approximation
/// computed on the same realized power profile.
Fig1Result run_fig1(int n, int k, int realizations, std::uint64_t seed,
                    double noise_psd = 0.1, double power_mean = 1.0);

struct ProfileRow {
  int user_index_sorted;  // 1-based, strongest user first
  std::string algorithm;
  std::string receiver;
  double transmit_power_w;
  double achieved_sinr;   // recomputed through the exact receiver
};

struct ProfileResult {
  std::vector<ProfileRow> rows;
};

/// One channel/code draw; runs every algorithm x receiver combination:
/// equal_received_power x linear, proposed x {linear, sic} (the sic rows use
/// the distributed per-user assembly), conventional x {linear, sic}.
/// `codes_override` replaces the random codes (used by tests with orthogonal
/// codes); it must be N x K with unit-norm columns.
ProfileResult run_power_profile(const SystemConfig& cfg, std::uint64_t seed,
                                const Eigen::MatrixXd* codes_override = nullptr);

struct SweepRow {
  int k;
  std::string algorithm;
  std::string receiver;
  double avg_utility;
  double avg_power_w;
  double avg_sinr;
  int trials;  ///< trials contributing to the averages (failed trials excluded)
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int failed_trials = 0;               // across all grid points / algorithms
  std::vector<std::string> failures;   // one "k=..,trial=..,alg=..: reason" per failure
};

/// Monte Carlo sweep over user counts. Per grid point K and trial t the
/// channel/code stream is derived as (seed, K, t), so results are independent
/// of execution order; trials run in parallel (OpenMP) and aggregation is in
/// trial order, making the CSV byte-identical across runs and thread counts.
/// Infeasible/non-convergent trials are excluded from that algorithm's
/// averages and reported in `failures`.
SweepResult run_sweep(const SystemConfig& cfg_template, const std::vector<int>& k_grid,
                      int trials, std::uint64_t seed);

std::string to_csv(const Fig1Result& r);
std::string to_csv(const ProfileResult& r);
std::string to_csv(const SweepResult& r);
void write_file(const std::string& path, const std::string& contents);

}  // namespace lspc::experiments
