#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "lspc/config.hpp"
#include "lspc/experiments.hpp"

namespace {

std::uint64_t pick_seed(const CLI::Option* opt, std::uint64_t cli_seed,
                        const lspc::SystemConfig& cfg) {
  return opt->count() ? cli_seed : cfg.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed power control for uplink DS/CDMA with MMSE and "
               "SIC/MMSE receivers: asymptotic SINR solvers, exact receivers "
               "and a Monte Carlo harness"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");

  // target-sinr
  auto* cmd_target = app.add_subcommand("target-sinr", "Utility-maximizing target SINR");
  int m = 120;
  cmd_target->add_option("--m", m, "packet length in bits")->capture_default_str();

  // fig1
  auto* cmd_fig1 = app.add_subcommand(
      "fig1", "Exact SIC/MMSE SINR realizations vs the deterministic approximation");
  int f_n = 256, f_k = 128, f_real = 100;
  std::uint64_t f_seed = 1;
  double f_noise = 0.1, f_mean = 1.0;
  std::string f_out = "fig1.csv";
  cmd_fig1->add_option("--n", f_n, "processing gain")->capture_default_str();
  cmd_fig1->add_option("--k", f_k, "number of users")->capture_default_str();
  cmd_fig1->add_option("--realizations", f_real, "Monte Carlo realizations")
      ->capture_default_str();
  cmd_fig1->add_option("--seed", f_seed, "master seed")->capture_default_str();
  cmd_fig1->add_option("--noise-psd", f_noise, "noise PSD")->capture_default_str();
  cmd_fig1->add_option("--power-mean", f_mean, "mean of the exponential received powers")
      ->capture_default_str();
  cmd_fig1->add_option("--out", f_out, "output CSV path")->capture_default_str();

  // profile
  auto* cmd_prof = app.add_subcommand("profile", "Per-user power/SINR profile, one trial");
  std::string p_config, p_out = "profile.csv";
  std::uint64_t p_seed = 0;
  auto* p_seed_opt = cmd_prof->add_option("--seed", p_seed, "master seed (default: config)");
  cmd_prof->add_option("--config", p_config, "JSON config file")->required();
  cmd_prof->add_option("--out", p_out, "output CSV path")->capture_default_str();

  // sweep
  auto* cmd_sweep = app.add_subcommand("sweep", "Monte Carlo averages over a user-count grid");
  std::string s_config, s_out = "sweep.csv";
  std::vector<int> s_grid{16, 32, 64, 96, 128};
  int s_trials = 1000;
  std::uint64_t s_seed = 0;
  auto* s_seed_opt = cmd_sweep->add_option("--seed", s_seed, "master seed (default: config)");
  cmd_sweep->add_option("--config", s_config, "JSON config file")->required();
  cmd_sweep->add_option("--k-grid", s_grid, "user counts, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  cmd_sweep->add_option("--trials", s_trials, "trials per grid point")->capture_default_str();
  cmd_sweep->add_option("--out", s_out, "output CSV path")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (cmd_target->parsed()) {
      const double g = lspc::experiments::solve_target_sinr(m);
      std::cout << "target_sinr " << g << " (" << lspc::linear_to_db(g) << " dB)\n";
    } else if (cmd_fig1->parsed()) {
      const auto res = lspc::experiments::run_fig1(f_n, f_k, f_real, f_seed, f_noise, f_mean);
      lspc::experiments::write_file(f_out, lspc::experiments::to_csv(res));
      std::cout << "wrote " << res.rows.size() << " rows to " << f_out << "\n";
    } else if (cmd_prof->parsed()) {
      const auto cfg = lspc::load_config(p_config);
      const auto res =
          lspc::experiments::run_power_profile(cfg, pick_seed(p_seed_opt, p_seed, cfg));
      lspc::experiments::write_file(p_out, lspc::experiments::to_csv(res));
      std::cout << "wrote " << res.rows.size() << " rows to " << p_out << "\n";
    } else if (cmd_sweep->parsed()) {
      const auto cfg = lspc::load_config(s_config);
      const auto res = lspc::experiments::run_sweep(cfg, s_grid, s_trials,
                                                    pick_seed(s_seed_opt, s_seed, cfg));
      lspc::experiments::write_file(s_out, lspc::experiments::to_csv(res));
      std::cout << "wrote " << res.rows.size() << " rows to " << s_out << "\n";
      if (res.failed_trials > 0) {
        std::cerr << res.failed_trials << " trial/algorithm cells failed and were "
                  << "excluded from the averages:\n";
        for (const auto& f : res.failures) std::cerr << "  " << f << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
