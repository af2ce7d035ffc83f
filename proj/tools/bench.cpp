// Timing comparison of the optimized receiver kernels against the serial
// reference implementations, plus trial-level OpenMP scaling of the sweep.

#include <algorithm>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "lspc/channel.hpp"
#include "lspc/experiments.hpp"
#include "lspc/receivers.hpp"
#include "lspc/rng.hpp"
#include "lspc/spreading.hpp"

using namespace lspc;

namespace {

receivers::ReceiverInput make_instance(int n, int k, std::uint64_t seed) {
  Rng rng(seed);
  receivers::ReceiverInput in;
  in.codes = sample_spreading_codes(n, k, rng).codes;
  in.gains.resize(k);
  in.tx_powers.resize(k);
  for (int i = 0; i < k; ++i) {
    in.gains[i] = rng.rayleigh(1.0);
    in.tx_powers[i] = rng.uniform(0.5, 2.0);
  }
  std::sort(in.gains.data(), in.gains.data() + k, std::greater<double>());
  in.noise_psd = 0.1;
  return in;
}

template <class Fn>
double time_ms(int reps, Fn&& fn) {
  fn();  // warm up
  const double t0 = omp_get_wtime();
  for (int r = 0; r < reps; ++r) fn();
  return (omp_get_wtime() - t0) * 1e3 / reps;
}

void bench_receivers(int n, int k) {
  const auto in = make_instance(n, k, 42);
  volatile double sink = 0.0;

  const int reps = n >= 256 ? 3 : 10;
  const double t_lin_ref = time_ms(reps, [&] { sink = sink + receivers::reference::linear_sinrs(in).sinr.sum(); });
  const double t_lin = time_ms(reps, [&] { sink = sink + receivers::linear_sinrs(in).sinr.sum(); });
  const double t_sic_ref = time_ms(reps, [&] { sink = sink + receivers::reference::sic_sinrs(in).sinr.sum(); });
  const double t_sic = time_ms(reps, [&] { sink = sink + receivers::sic_sinrs(in).sinr.sum(); });

  std::printf("N=%d K=%d\n", n, k);
  std::printf("  linear  reference %9.2f ms   openmp        %9.2f ms   speedup %5.2fx\n",
              t_lin_ref, t_lin, t_lin_ref / t_lin);
  std::printf("  sic     reference %9.2f ms   rank-1 update %9.2f ms   speedup %5.2fx\n",
              t_sic_ref, t_sic, t_sic_ref / t_sic);
}

void bench_sweep() {
  SystemConfig cfg;
  cfg.n = 128;
  cfg.k = 64;
  cfg.noise_psd = 2e-9;
  cfg.target_sinr = 6.689;
  cfg.p_max = 3.16227766016838e-3;
  cfg.packet_len = 120;
  cfg.d_min = 10;
  cfg.d_max = 1000;

  const int trials = 12;
  const int max_threads = omp_get_max_threads();

  omp_set_num_threads(1);
  const double t0 = omp_get_wtime();
  experiments::run_sweep(cfg, {64}, trials, 7);
  const double t1thr = omp_get_wtime() - t0;

  omp_set_num_threads(max_threads);
  const double t1 = omp_get_wtime();
  experiments::run_sweep(cfg, {64}, trials, 7);
  const double tall = omp_get_wtime() - t1;

  std::printf("sweep K=64 trials=%d: 1 thread %.2f s, %d threads %.2f s, speedup %.2fx\n",
              trials, t1thr, max_threads, tall, t1thr / tall);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());
  bench_receivers(128, 64);
  bench_receivers(256, 128);
  bench_sweep();
  return 0;
}
