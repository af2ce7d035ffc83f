#include "lspc/large_system.hpp"

#include <cmath>
#include <stdexcept>

#include "lspc/errors.hpp"

namespace lspc::large_system {

namespace {

constexpr double kTol = 1e-12;
constexpr int kMaxIter = 10000;

// Solves gamma = own / (noise + interference(gamma)). The map is increasing
// and bounded by own/noise, so iterating from gamma0 = own/noise descends
// monotonically onto the unique root; a bisection safeguard keeps the iterate
// inside the certain bracket [0, own/noise].
template <class InterferenceFn>
FixedPointResult fixed_point(double own, double noise, InterferenceFn interference) {
  double lo = 0.0;
  double hi = own / noise;
  double g = hi;
  double residual = 0.0;
  for (int it = 0; it < kMaxIter; ++it) {
    const double mapped = own / (noise + interference(g));
    residual = std::abs(mapped - g);
    if (residual <= kTol * (1.0 + std::abs(mapped)))
      return {mapped, it, residual};
    if (mapped > g)
      lo = g;
    else
      hi = g;
    g = (mapped > lo && mapped < hi) ? mapped : 0.5 * (lo + hi);
    if (hi - lo <= 1e-16 * (1.0 + hi)) return {0.5 * (lo + hi), it, residual};
  }
  throw NumericalError("sinr fixed point did not converge", residual);
}

}  // namespace

void PowerDistribution::validate() const {
  if (support.size() != mass.size())
    throw std::invalid_argument("power distribution: support/mass size mismatch");
  if (support.size() > 0) {
    if (support.minCoeff() < 0.0)
      throw std::invalid_argument("power distribution: negative support point");
    if (mass.minCoeff() < 0.0)
      throw std::invalid_argument("power distribution: negative mass");
    if (std::abs(mass.sum() - 1.0) > 1e-12)
      throw std::invalid_argument("power distribution: masses must sum to 1");
  }
}

FixedPointResult tse_hanly_sinr(double own_power, const PowerDistribution& interferers,
                                double alpha, double noise_psd) {
  if (!(own_power > 0.0)) throw std::invalid_argument("tse_hanly_sinr: own power must be > 0");
  if (!(noise_psd > 0.0)) throw std::invalid_argument("tse_hanly_sinr: noise must be > 0");
  if (alpha < 0.0) throw std::invalid_argument("tse_hanly_sinr: alpha must be >= 0");
  interferers.validate();
  if (alpha == 0.0 || interferers.support.size() == 0)
    return {own_power / noise_psd, 0, 0.0};

  return fixed_point(own_power, noise_psd, [&](double g) {
    double s = 0.0;
    for (int i = 0; i < interferers.support.size(); ++i) {
      const double p = interferers.support[i];
      s += alpha * interferers.mass[i] * p * own_power / (own_power + p * g);
    }
    return s;
  });
}

namespace {

// Shared finite-K form: gamma = P_k / (noise + (1/n) sum_{i in set} ...).
FixedPointResult finite_fixed_point(int user, const Eigen::VectorXd& received, int n,
                                    double noise_psd, int interference_lo) {
  if (user < 0 || user >= received.size())
    throw std::invalid_argument("sinr heuristic: bad user index");
  if (received.minCoeff() < 0.0)
    throw std::invalid_argument("sinr heuristic: negative received power");
  const double own = received[user];
  if (!(own > 0.0)) throw std::invalid_argument("sinr heuristic: own power must be > 0");
  if (!(noise_psd > 0.0)) throw std::invalid_argument("sinr heuristic: noise must be > 0");

  const double w = 1.0 / n;
  return fixed_point(own, noise_psd, [&](double g) {
    double s = 0.0;
    for (int i = interference_lo; i < received.size(); ++i) {
      if (i == user) continue;
      s += w * received[i] * own / (own + received[i] * g);
    }
    return s;
  });
}

}  // namespace

FixedPointResult finite_mmse_sinr_heuristic(int user, const Eigen::VectorXd& received_powers,
                                            int n, double noise_psd) {
  return finite_fixed_point(user, received_powers, n, noise_psd, 0);
}

FixedPointResult sic_asymptotic_sinr(int user, const Eigen::VectorXd& received_powers,
                                     int n, double noise_psd) {
  for (int i = 0; i + 1 < received_powers.size(); ++i)
    if (received_powers[i + 1] > received_powers[i])
      throw std::invalid_argument("sic_asymptotic_sinr: powers must be sorted non-increasingly");
  return finite_fixed_point(user, received_powers, n, noise_psd, user + 1);
}

}  // namespace lspc::large_system
