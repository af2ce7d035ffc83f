#include "lspc/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lspc/channel.hpp"
#include "lspc/errors.hpp"
#include "lspc/large_system.hpp"
#include "lspc/power_control.hpp"
#include "lspc/receivers.hpp"
#include "lspc/rng.hpp"
#include "lspc/spreading.hpp"

namespace lspc::experiments {

namespace {
constexpr long kTableSamples = 1000000;
constexpr std::uint32_t kTableTag = 0x7ab1e;
}  // namespace

double solve_target_sinr(int m) {
  if (m < 2) throw ConfigError("packet length must be >= 2");
  // stationarity of (1-e^-g)^m / g:  g m e^-g = 1 - e^-g
  const auto f = [m](double g) {
    return g * m * std::exp(-g) - (1.0 - std::exp(-g));
  };
  double lo = 1.0, hi = 20.0;
  double flo = f(lo);
  if (!(flo > 0.0) || !(f(hi) < 0.0))
    throw NumericalError("target sinr: no sign change on [1, 20]", std::abs(flo));
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double utility(double sinr, double power, int m, double scale) {
  if (!(power > 0.0)) throw std::domain_error("utility: power must be > 0");
  if (sinr < 0.0) throw std::domain_error("utility: sinr must be >= 0");
  return scale * std::pow(1.0 - std::exp(-sinr), m) / power;
}

Fig1Result run_fig1(int n, int k, int realizations, std::uint64_t seed, double noise_psd,
                    double power_mean) {
  if (n < 1 || k < 1 || realizations < 1)
    throw ConfigError("fig1 needs n, k, realizations >= 1");
  Eigen::MatrixXd exact(realizations, k), asym(realizations, k);

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < realizations; ++r) {
    Rng rng(derive_seed(seed, {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(r)}));
    Eigen::VectorXd p(k);
    for (int i = 0; i < k; ++i) p[i] = rng.exponential(power_mean);
    std::sort(p.data(), p.data() + k, std::greater<double>());

    receivers::ReceiverInput in;
    in.codes = sample_spreading_codes(n, k, rng).codes;
    in.gains = p.cwiseSqrt();
    in.tx_powers = Eigen::VectorXd::Ones(k);
    in.noise_psd = noise_psd;

    exact.row(r) = receivers::sic_sinrs(in).sinr;
    for (int u = 0; u < k; ++u)
      asym(r, u) = large_system::sic_asymptotic_sinr(u, p, n, noise_psd).sinr;
  }

  Fig1Result out;
  out.n = n;
  out.k = k;
  out.rows.reserve(static_cast<std::size_t>(k) * realizations);
  for (int u = 0; u < k; ++u)
    for (int r = 0; r < realizations; ++r)
      out.rows.push_back({u + 1, r + 1, exact(r, u), asym(r, u)});
  return out;
}

namespace {

struct ComboOutcome {
  const char* algorithm;
  const char* receiver;
  Eigen::VectorXd tx;
  Eigen::VectorXd sinr;
  bool failed = false;
  std::string reason;
};

std::vector<ComboOutcome> run_trial(const SystemConfig& cfg, const GainQuantileTable& table,
                                    const UserChannelSet& channels,
                                    const SpreadingMatrix& codes, bool rethrow) {
  using namespace power_control;
  receivers::ReceiverInput in;
  in.codes = codes.codes;
  in.gains = channels.gain;
  in.noise_psd = cfg.noise_psd;

  const auto achieved = [&](const PowerAllocation& a, ReceiverKind r) {
    in.tx_powers = a.tx;
    return r == ReceiverKind::kLinear ? receivers::linear_sinrs(in).sinr
                                      : receivers::sic_sinrs(in).sinr;
  };

  std::vector<ComboOutcome> out;
  const auto add = [&](const char* alg, const char* recv, ReceiverKind kind, auto&& allocate) {
    ComboOutcome c{alg, recv, {}, {}, false, {}};
    try {
      const PowerAllocation a = allocate();
      c.tx = a.tx;
      c.sinr = achieved(a, kind);
    } catch (const std::exception& e) {
      if (rethrow) throw;
      c.failed = true;
      c.reason = e.what();
    }
    out.push_back(std::move(c));
  };

  add(kAlgEqualReceived, kRecvLinear, ReceiverKind::kLinear,
      [&] { return equal_received_power_allocation(cfg, channels); });
  add(kAlgProposed, kRecvLinear, ReceiverKind::kLinear,
      [&] { return proposed_linear_allocation(cfg, channels, table); });
  add(kAlgProposed, kRecvSic, ReceiverKind::kSic,
      [&] { return proposed_sic_distributed_profile(cfg, channels, table); });
  add(kAlgConventional, kRecvLinear, ReceiverKind::kLinear,
      [&] { return conventional_iterative_allocation(cfg, codes, channels, ReceiverKind::kLinear); });
  add(kAlgConventional, kRecvSic, ReceiverKind::kSic,
      [&] { return conventional_iterative_allocation(cfg, codes, channels, ReceiverKind::kSic); });
  return out;
}

}  // namespace

ProfileResult run_power_profile(const SystemConfig& cfg, std::uint64_t seed,
                                const Eigen::MatrixXd* codes_override) {
  cfg.validate();
  const GainQuantileTable table = build_gain_quantile_table(
      cfg, kTableSamples, derive_seed(seed, {kTableTag, static_cast<std::uint32_t>(cfg.k)}));

  Rng rng(derive_seed(seed, {static_cast<std::uint32_t>(cfg.k), 0}));
  const UserChannelSet channels = sample_channels(cfg, rng);
  SpreadingMatrix codes;
  if (codes_override) {
    if (codes_override->rows() != cfg.n || codes_override->cols() != cfg.k)
      throw ConfigError("codes override has wrong dimensions");
    codes.codes = *codes_override;
  } else {
    codes = sample_spreading_codes(cfg.n, cfg.k, rng);
  }

  const auto combos = run_trial(cfg, table, channels, codes, /*rethrow=*/true);
  ProfileResult res;
  res.rows.reserve(combos.size() * cfg.k);
  for (const auto& c : combos)
    for (int u = 0; u < cfg.k; ++u)
      res.rows.push_back({u + 1, c.algorithm, c.receiver, c.tx[u], c.sinr[u]});
  return res;
}

SweepResult run_sweep(const SystemConfig& cfg_template, const std::vector<int>& k_grid,
                      int trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("sweep needs trials >= 1");
  if (k_grid.empty()) throw ConfigError("sweep needs a non-empty k grid");

  struct TrialCell {
    double u = 0, p = 0, s = 0;
    bool failed = false;
    std::string reason;
  };

  SweepResult res;
  for (int kg : k_grid) {
    SystemConfig cfg = cfg_template;
    cfg.k = kg;
    cfg.validate();
    const GainQuantileTable table = build_gain_quantile_table(
        cfg, kTableSamples, derive_seed(seed, {kTableTag, static_cast<std::uint32_t>(kg)}));

    constexpr int kCombos = 5;
    std::vector<std::array<TrialCell, kCombos>> cells(trials);

#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, {static_cast<std::uint32_t>(kg), static_cast<std::uint32_t>(t)}));
      const UserChannelSet channels = sample_channels(cfg, rng);
      const SpreadingMatrix codes = sample_spreading_codes(cfg.n, cfg.k, rng);
      const auto combos = run_trial(cfg, table, channels, codes, /*rethrow=*/false);
      for (int c = 0; c < kCombos; ++c) {
        TrialCell& cell = cells[t][c];
        if (combos[c].failed) {
          cell.failed = true;
          cell.reason = combos[c].reason;
          continue;
        }
        double usum = 0;
        for (int i = 0; i < kg; ++i)
          usum += utility(combos[c].sinr[i], combos[c].tx[i], cfg.packet_len);
        cell.u = usum / kg;
        cell.p = combos[c].tx.mean();
        cell.s = combos[c].sinr.mean();
      }
    }

    static constexpr const char* kAlg[kCombos] = {kAlgEqualReceived, kAlgProposed, kAlgProposed,
                                                  kAlgConventional, kAlgConventional};
    static constexpr const char* kRecv[kCombos] = {kRecvLinear, kRecvLinear, kRecvSic,
                                                   kRecvLinear, kRecvSic};
    for (int c = 0; c < kCombos; ++c) {
      double su = 0, sp = 0, ss = 0;
      int ok = 0;
      for (int t = 0; t < trials; ++t) {
        const TrialCell& cell = cells[t][c];
        if (cell.failed) {
          std::ostringstream f;
          f << "k=" << kg << ",trial=" << t << ",algorithm=" << kAlg[c]
            << ",receiver=" << kRecv[c] << ": " << cell.reason;
          res.failures.push_back(f.str());
          ++res.failed_trials;
          continue;
        }
        su += cell.u;
        sp += cell.p;
        ss += cell.s;
        ++ok;
      }
      res.rows.push_back({kg, kAlg[c], kRecv[c], ok ? su / ok : 0.0, ok ? sp / ok : 0.0,
                          ok ? ss / ok : 0.0, ok});
    }
  }
  return res;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_csv(const Fig1Result& r) {
  std::string s = "user_index,realization_id,exact_sinr,asymptotic_sinr\n";
  for (const auto& row : r.rows) {
    s += std::to_string(row.user_index);
    s += ',';
    s += std::to_string(row.realization_id);
    s += ',';
    s += fmt(row.exact_sinr);
    s += ',';
    s += fmt(row.asymptotic_sinr);
    s += '\n';
  }
  return s;
}

std::string to_csv(const ProfileResult& r) {
  std::string s = "user_index_sorted,algorithm,receiver,transmit_power_w,achieved_sinr\n";
  for (const auto& row : r.rows) {
    s += std::to_string(row.user_index_sorted);
    s += ',';
    s += row.algorithm;
    s += ',';
    s += row.receiver;
    s += ',';
    s += fmt(row.transmit_power_w);
    s += ',';
    s += fmt(row.achieved_sinr);
    s += '\n';
  }
  return s;
}

std::string to_csv(const SweepResult& r) {
  std::string s = "k,algorithm,receiver,avg_utility,avg_power_w,avg_sinr,trials\n";
  for (const auto& row : r.rows) {
    s += std::to_string(row.k);
    s += ',';
    s += row.algorithm;
    s += ',';
    s += row.receiver;
    s += ',';
    s += fmt(row.avg_utility);
    s += ',';
    s += fmt(row.avg_power_w);
    s += ',';
    s += fmt(row.avg_sinr);
    s += ',';
    s += std::to_string(row.trials);
    s += '\n';
  }
  return s;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << contents;
}

}  // namespace lspc::experiments
