#include "lspc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lspc/errors.hpp"
#include "lspc/experiments.hpp"

namespace lspc {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
double dbw_to_watt(double dbw) { return std::pow(10.0, dbw / 10.0); }

void SystemConfig::validate() const {
  if (n < 1) throw ConfigError("processing gain n must be >= 1");
  if (k < 1) throw ConfigError("user count k must be >= 1");
  if (!(noise_psd > 0.0)) throw ConfigError("noise_psd must be > 0");
  if (!(target_sinr > 0.0)) throw ConfigError("target_sinr must be > 0");
  if (!(p_max > 0.0)) throw ConfigError("p_max must be > 0");
  if (packet_len < 2) throw ConfigError("packet_len must be >= 2");
  if (!(d_min > 0.0) || !(d_min <= d_max))
    throw ConfigError("distances must satisfy 0 < d_min <= d_max");
}

SystemConfig config_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  SystemConfig cfg;
  try {
    cfg.n = j.at("n").get<int>();
    cfg.k = j.at("k").get<int>();
    cfg.noise_psd = j.at("noise_psd").get<double>();
    cfg.packet_len = j.at("packet_len").get<int>();
    cfg.d_min = j.at("d_min").get<double>();
    cfg.d_max = j.at("d_max").get<double>();
    cfg.seed = j.value("seed", std::uint64_t{0});

    if (j.contains("target_sinr"))
      cfg.target_sinr = j["target_sinr"].get<double>();
    else if (j.contains("target_sinr_db"))
      cfg.target_sinr = db_to_linear(j["target_sinr_db"].get<double>());
    else
      cfg.target_sinr = experiments::solve_target_sinr(cfg.packet_len);

    if (j.contains("p_max"))
      cfg.p_max = j["p_max"].get<double>();
    else if (j.contains("p_max_dbw"))
      cfg.p_max = dbw_to_watt(j["p_max_dbw"].get<double>());
    else
      throw ConfigError("config needs p_max or p_max_dbw");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }

  cfg.validate();
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

}  // namespace lspc
