#pragma once

#include <cstdint>
#include <string>

namespace lspc {

/// System-level scenario parameters for the uplink DS/CDMA model.
struct SystemConfig {
  int n = 0;                ///< processing gain N (spreading code length)
  int k = 0;                ///< number of active users K
  double noise_psd = 0.0;   ///< thermal noise PSD sigma^2 [W/Hz]
  double target_sinr = 0.0; ///< common target SINR, linear scale
  double p_max = 0.0;       ///< per-user maximum transmit power [W]
  int packet_len = 0;       ///< packet length M [bits], drives the utility model
  double d_min = 0.0;       ///< minimum user distance [m]
  double d_max = 0.0;       ///< maximum user distance [m]
  std::uint64_t seed = 0;   ///< default master seed for experiment runs

  double load() const { return static_cast<double>(k) / n; }  // alpha = K/N

  /// Throws ConfigError if any field is out of range.
  void validate() const;
};

double db_to_linear(double db);
double linear_to_db(double lin);
double dbw_to_watt(double dbw);

/// Parses a JSON config. Accepted keys: n, k, noise_psd, target_sinr or
/// target_sinr_db, p_max or p_max_dbw, packet_len, d_min, d_max, seed.
/// If no target SINR key is present it is derived from packet_len via the
/// utility-maximizing stationarity equation (see experiments::solve_target_sinr).
SystemConfig config_from_json_text(const std::string& text);
SystemConfig load_config(const std::string& path);

}  // namespace lspc
