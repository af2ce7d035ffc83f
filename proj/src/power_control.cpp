#include "lspc/power_control.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lspc/errors.hpp"
#include "lspc/receivers.hpp"

namespace lspc::power_control {

namespace {

void require_feasible_load(const SystemConfig& cfg) {
  const double bound = 1.0 + 1.0 / cfg.target_sinr;
  if (cfg.load() >= bound) {
    std::ostringstream msg;
    msg << "equal received power infeasible: alpha = " << cfg.load()
        << " >= 1 + 1/target_sinr = " << bound;
    throw FeasibilityError(msg.str());
  }
}

double equal_received_power(const SystemConfig& cfg) {
  const double g = cfg.target_sinr;
  return g * cfg.noise_psd / (1.0 - cfg.load() * g / (1.0 + g));
}

}  // namespace

int PowerAllocation::saturated_count() const {
  int c = 0;
  for (char s : saturated) c += (s != 0);
  return c;
}

PowerAllocation PowerAllocation::from_tx(const Eigen::VectorXd& tx,
                                         const UserChannelSet& gains, double p_max) {
  PowerAllocation a;
  a.tx = tx;
  a.received = tx.array() * gains.gain.array().square();
  a.saturated.resize(tx.size());
  for (int i = 0; i < tx.size(); ++i) a.saturated[i] = (tx[i] == p_max);
  return a;
}

PowerAllocation equal_received_power_allocation(const SystemConfig& cfg,
                                                const UserChannelSet& gains) {
  cfg.validate();
  require_feasible_load(cfg);
  const double pr = equal_received_power(cfg);
  Eigen::VectorXd tx = (pr / gains.gain.array().square()).cwiseMin(cfg.p_max);
  return PowerAllocation::from_tx(tx, gains, cfg.p_max);
}

SaturationEstimate estimate_saturated_users(const SystemConfig& cfg,
                                            const GainQuantileTable& table) {
  cfg.validate();
  require_feasible_load(cfg);
  const double pr = equal_received_power(cfg);
  SaturationEstimate est;
  for (int i = 0; i < table.value.size(); ++i)
    if (pr / table.value[i] > cfg.p_max) ++est.u2;
  est.u1 = cfg.k - est.u2;
  return est;
}

double solve_received_power_linear(const SystemConfig& cfg, const GainQuantileTable& table,
                                   const SaturationEstimate& sat) {
  cfg.validate();
  const double g = cfg.target_sinr;
  const double s2 = cfg.noise_psd;
  const int n = cfg.n;
  const int k = cfg.k;
  const int u1 = sat.u1, u2 = sat.u2;

  // As P -> inf the left side tends to n(1+g)/u1; past that load no receive
  // power reaches the target.
  if (u1 > 0 && static_cast<double>(u1) * g >= n * (1.0 + g)) {
    std::ostringstream msg;
    msg << "receive power equation unsolvable: u1/n = " << static_cast<double>(u1) / n
        << " >= 1 + 1/target_sinr";
    throw FeasibilityError(msg.str());
  }

  const auto lhs = [&](double p) {
    double den = s2 + (static_cast<double>(u1) / n) * p / (1.0 + g);
    for (int i = k - u2; i < k; ++i) {
      const double c = cfg.p_max * table.value[i];
      den += (1.0 / n) * p * c / (p + c * g);
    }
    return p / den;
  };

  double lo = g * s2;  // lhs(lo) < g whenever any interferer exists
  double hi = 2.0 * lo;
  int expand = 0;
  while (lhs(hi) < g) {
    hi *= 2.0;
    if (++expand > 400) throw FeasibilityError("receive power bracket expansion failed");
  }

  double mid = hi;
  for (int it = 0; it < 2000; ++it) {
    mid = 0.5 * (lo + hi);
    const double v = lhs(mid);
    if (std::abs(v - g) <= 1e-12 * g) return mid;
    if (v < g)
      lo = mid;
    else
      hi = mid;
    if ((hi - lo) <= 1e-16 * hi) break;
  }
  return mid;
}

PowerAllocation proposed_linear_allocation(const SystemConfig& cfg,
                                           const UserChannelSet& gains,
                                           const GainQuantileTable& table) {
  const SaturationEstimate sat = estimate_saturated_users(cfg, table);
  const double p_star = solve_received_power_linear(cfg, table, sat);
  Eigen::VectorXd tx = (p_star / gains.gain.array().square()).cwiseMin(cfg.p_max);
  return PowerAllocation::from_tx(tx, gains, cfg.p_max);
}

namespace {

struct SicStep {
  Eigen::VectorXd tx;    // powers chosen so far (indices k..K-1 filled)
  Eigen::VectorXd recv;  // actual received powers under gains-in-use
};

// One backward step of the recursion: target received power of user k given
// the already-decided users k+1..K-1 with squared gains `g2` in use.
double sic_target(const SystemConfig& cfg, const SicStep& st, const Eigen::VectorXd& g2,
                  int k) {
  const double g = cfg.target_sinr;
  const int kk = cfg.k;
  if (k == kk - 1) return g * cfg.noise_psd;
  const double p_next = st.recv[k + 1];
  double sum = 0.0;
  for (int l = k + 1; l < kk; ++l) {
    const double r = g2[l] * st.tx[l];
    sum += r / (p_next + r * g);
  }
  const double den = 1.0 - (g / cfg.n) * sum;
  if (den <= 0.0)
    throw FeasibilityError("sic recursion infeasible: load too high for the target SINR");
  return g * cfg.noise_psd / den;
}

void sic_decide(const SystemConfig& cfg, SicStep& st, const Eigen::VectorXd& g2, int k,
                double target) {
  st.tx[k] = std::min(target / g2[k], cfg.p_max);
  st.recv[k] = st.tx[k] * g2[k];  // clipped users interfere at their actual level
}

}  // namespace

PowerAllocation proposed_sic_allocation(const SystemConfig& cfg, const UserChannelSet& gains,
                                        const GainQuantileTable& table, SicMode mode) {
  cfg.validate();
  const int kk = cfg.k;
  const Eigen::VectorXd true_g2 = gains.gain_sq();

  SicStep st;
  st.tx = Eigen::VectorXd::Zero(kk);
  st.recv = Eigen::VectorXd::Zero(kk);

  if (mode.kind == SicMode::kCentralized) {
    for (int k = kk - 1; k >= 0; --k)
      sic_decide(cfg, st, true_g2, k, sic_target(cfg, st, true_g2, k));
    return PowerAllocation::from_tx(st.tx, gains, cfg.p_max);
  }

  const int j = mode.user;
  if (j < 0 || j >= kk)
    throw std::invalid_argument("proposed_sic_allocation: bad distributed user index");
  // Lookahead on the table's gain estimates only.
  for (int k = kk - 1; k > j; --k)
    sic_decide(cfg, st, table.value, k, sic_target(cfg, st, table.value, k));
  // Own step: table estimates for the weaker users, true gain for the clip.
  const double target_j = sic_target(cfg, st, table.value, j);
  st.tx[j] = std::min(target_j / true_g2[j], cfg.p_max);
  return PowerAllocation::from_tx(st.tx, gains, cfg.p_max);
}

PowerAllocation proposed_sic_distributed_profile(const SystemConfig& cfg,
                                                 const UserChannelSet& gains,
                                                 const GainQuantileTable& table) {
  cfg.validate();
  const int kk = cfg.k;
  const Eigen::VectorXd true_g2 = gains.gain_sq();

  // The table-only lookahead is the same recursion for every user, so run it
  // once and read off each user's unclipped target.
  SicStep st;
  st.tx = Eigen::VectorXd::Zero(kk);
  st.recv = Eigen::VectorXd::Zero(kk);
  Eigen::VectorXd tx(kk);
  for (int k = kk - 1; k >= 0; --k) {
    const double target = sic_target(cfg, st, table.value, k);
    tx[k] = std::min(target / true_g2[k], cfg.p_max);
    sic_decide(cfg, st, table.value, k, target);
  }
  return PowerAllocation::from_tx(tx, gains, cfg.p_max);
}

PowerAllocation conventional_iterative_allocation(const SystemConfig& cfg,
                                                  const SpreadingMatrix& codes,
                                                  const UserChannelSet& gains,
                                                  ReceiverKind receiver,
                                                  int* iterations_out) {
  cfg.validate();
  const int kk = cfg.k;
  const double g = cfg.target_sinr;
  constexpr double kTol = 1e-6;
  constexpr int kMaxIter = 500;

  receivers::ReceiverInput in;
  in.codes = codes.codes;
  in.gains = gains.gain;
  in.noise_psd = cfg.noise_psd;
  in.tx_powers = Eigen::VectorXd::Constant(kk, cfg.p_max / 100.0);

  Eigen::VectorXd sinr(kk);
  for (int it = 0; it <= kMaxIter; ++it) {
    sinr = (receiver == ReceiverKind::kLinear) ? receivers::linear_sinrs(in).sinr
                                               : receivers::sic_sinrs(in).sinr;
    double worst = 0.0;
    for (int u = 0; u < kk; ++u)
      if (in.tx_powers[u] < cfg.p_max)
        worst = std::max(worst, std::abs(sinr[u] - g) / g);
    if (worst < kTol) {
      if (iterations_out) *iterations_out = it;
      return PowerAllocation::from_tx(in.tx_powers, gains, cfg.p_max);
    }
    if (it == kMaxIter) break;
    for (int u = 0; u < kk; ++u)
      in.tx_powers[u] = std::min(cfg.p_max, in.tx_powers[u] * g / sinr[u]);
  }

  std::vector<double> residuals;
  double worst = 0.0;
  for (int u = 0; u < kk; ++u)
    if (in.tx_powers[u] < cfg.p_max) {
      residuals.push_back(std::abs(sinr[u] - g) / g);
      worst = std::max(worst, residuals.back());
    }
  throw ConvergenceError("conventional power control hit the iteration cap", worst,
                         std::move(residuals));
}

}  // namespace lspc::power_control
