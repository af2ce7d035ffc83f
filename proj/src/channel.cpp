#include "lspc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lspc/errors.hpp"

namespace lspc {

namespace {
constexpr double kRayleighMeanFactor = 1.2533141373155003;  // sqrt(pi/2)
}

std::vector<int> UserChannelSet::sorted_position() const {
  std::vector<int> pos(original_index.size());
  for (std::size_t s = 0; s < original_index.size(); ++s) pos[original_index[s]] = static_cast<int>(s);
  return pos;
}

UserChannelSet sample_channels(const SystemConfig& cfg, Rng& rng) {
  cfg.validate();
  const int k = cfg.k;
  Eigen::VectorXd d(k), h(k);
  for (int i = 0; i < k; ++i) {
    d[i] = rng.uniform(cfg.d_min, cfg.d_max);
    // amplitude mean 1/d  =>  Rayleigh scale 1/(d*sqrt(pi/2))
    h[i] = rng.rayleigh(1.0 / (d[i] * kRayleighMeanFactor));
  }

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return h[a] > h[b]; });

  UserChannelSet out;
  out.distance.resize(k);
  out.gain.resize(k);
  out.original_index = order;
  for (int s = 0; s < k; ++s) {
    out.distance[s] = d[order[s]];
    out.gain[s] = h[order[s]];
  }
  return out;
}

UserChannelSet sample_channels(const SystemConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  return sample_channels(cfg, rng);
}

GainQuantileTable build_gain_quantile_table(const SystemConfig& cfg, long sample_count,
                                            std::uint64_t seed) {
  cfg.validate();
  if (sample_count < 10L * cfg.k)
    throw ConfigError("quantile table sample_count must be >= 10*k");

  Rng rng(seed);
  std::vector<double> h2(static_cast<std::size_t>(sample_count));
  for (auto& v : h2) {
    const double d = rng.uniform(cfg.d_min, cfg.d_max);
    const double h = rng.rayleigh(1.0 / (d * kRayleighMeanFactor));
    v = h * h;
  }
  std::sort(h2.begin(), h2.end());

  const double m = static_cast<double>(sample_count);
  const double lo = 1.0 / (2.0 * m), hi = 1.0 - 1.0 / (2.0 * m);

  GainQuantileTable table;
  table.sample_count = sample_count;
  table.seed = seed;
  table.value.resize(cfg.k);
  for (int l = 1; l <= cfg.k; ++l) {
    const double u = std::clamp(static_cast<double>(cfg.k - l) / cfg.k, lo, hi);
    // order-statistic interpolation (numpy's default convention)
    const double pos = (m - 1.0) * u;
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    const double next = (i + 1 < h2.size()) ? h2[i + 1] : h2[i];
    table.value[l - 1] = h2[i] + frac * (next - h2[i]);
  }
  return table;
}

}  // namespace lspc
