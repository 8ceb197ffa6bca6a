// Benchmark of the per-rep Monte Carlo engines: serial reference loop vs the
// OpenMP path, with a bitwise agreement check on the reduced estimates.

#include <chrono>
#include <cstdio>
#include <vector>

#include "levyset/kernels.hpp"
#include "levyset/levy.hpp"
#include "levyset/parallel.hpp"
#include "levyset/stats.hpp"
#include "levyset/svint.hpp"

using namespace levyset;

namespace {

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double jump_functional_pass(int reps, int workers, std::vector<double>& slots) {
  const Kernel kernel = make_riemann_liouville(2.0, 1.0);
  const LevyDriverSpec driver = make_stable_driver(1.5, 1.0, 3e-3, 1, 1.0);
  const double t0 = now_seconds();
  run_reps(reps, workers, [&](long long rep) {
    const PathRealization path =
        sample_path(driver, 2, 42, substream(static_cast<std::uint64_t>(rep), 0));
    double s = 0.0;
    for (const JumpEvent& jump : path.jumps) {
      s += jump_weight(kernel, 1.0, jump.time, nullptr) * jump.mark[0];
    }
    slots[static_cast<std::size_t>(rep)] = s;
  });
  return now_seconds() - t0;
}

double brownian_functional_pass(int reps, int workers, std::vector<double>& slots) {
  const Kernel kernel = make_riemann_liouville(0.75, 1.0);
  LevyDriverSpec driver;
  driver.horizon = 1.0;
  const int grid_size = 2048;
  const PathRealization probe = sample_path(driver, grid_size, 7, 0);
  const std::vector<double> weights = cell_averaged_weights(kernel, probe.grid, 0.0, 1.0);
  const double t0 = now_seconds();
  run_reps(reps, workers, [&](long long rep) {
    const PathRealization path =
        sample_path(driver, grid_size, 7, substream(static_cast<std::uint64_t>(rep), 0));
    double x = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      x += weights[j] * path.brownian_increments[j];
    }
    slots[static_cast<std::size_t>(rep)] = x;
  });
  return now_seconds() - t0;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 2000;
  int workers = resolve_workers(0);
  if (argc > 1) reps = std::atoi(argv[1]);
  if (argc > 2) workers = std::atoi(argv[2]);
  std::printf("reps=%d workers=%d\n", reps, workers);

  {
    std::vector<double> serial(static_cast<std::size_t>(reps)), parallel(serial);
    const double ts = jump_functional_pass(reps, 1, serial);
    const double tp = jump_functional_pass(reps, workers, parallel);
    const double ms = compensated_sum(serial);
    const double mp = compensated_sum(parallel);
    std::printf("jump functional:     serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n", ts, tp,
                ts / tp, ms == mp ? "results identical" : "RESULTS DIFFER");
  }
  {
    std::vector<double> serial(static_cast<std::size_t>(reps)), parallel(serial);
    const double ts = brownian_functional_pass(reps, 1, serial);
    const double tp = brownian_functional_pass(reps, workers, parallel);
    const double ms = compensated_sum(serial);
    const double mp = compensated_sum(parallel);
    std::printf("brownian functional: serial %.3fs  parallel %.3fs  speedup %.2fx  %s\n", ts, tp,
                ts / tp, ms == mp ? "results identical" : "RESULTS DIFFER");
  }
  return 0;
}
